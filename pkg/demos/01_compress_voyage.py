"""Compress one voyage and inspect what the detector kept, and why.

A 600-report synthetic voyage cycles through cruising, turns, slow motion,
anchored stops and reporting gaps.  We compress it with the default
parameters, print the annotated critical points, and measure how faithfully
the synopsis reconstructs the original course.

Run:  python demos/01_compress_voyage.py
"""

from collections import Counter

from vesselsyn.evaluation import compute_metrics, synchronized_position
from vesselsyn.synopses import SynopsisConfig, compress_track
from vesselsyn.synthetic import make_mixed_voyage


def main() -> None:
    track = make_mixed_voyage(600, seed=19)
    cfg = SynopsisConfig()
    synopsis = compress_track(track, cfg)

    print(f"voyage: {len(track.points)} reports from vessel {track.mmsi}")
    print(f"synopsis: {len(synopsis)} critical points with default parameters\n")

    counts = Counter(a.value for cp in synopsis for a in cp.annotations)
    print("annotation counts:")
    for label, count in sorted(counts.items()):
        print(f"  {label:>18}  {count}")

    print("\nfirst ten critical points:")
    for cp in synopsis[:10]:
        labels = "|".join(sorted(a.value for a in cp.annotations))
        print(f"  t={cp.timestamp}  ({cp.lon:.5f}, {cp.lat:.5f})  {labels}")

    metrics = compute_metrics([track], {track.mmsi: synopsis})
    print(f"\ncompression ratio: {metrics.ratio:.4f} "
          f"({metrics.critical_count}/{metrics.noiseless_count} points kept)")
    print(f"reconstruction error: {metrics.rmse_m:.2f} m RMSE")

    # Reconstruct the position halfway between two retained points to show
    # how consumers read the synopsis back.
    a, b = synopsis[0], synopsis[1]
    midpoint = (a.timestamp + b.timestamp) // 2
    lon, lat = synchronized_position(synopsis, midpoint)
    print(f"\ninterpolated position at t={midpoint}: ({lon:.5f}, {lat:.5f})")


if __name__ == "__main__":
    main()
