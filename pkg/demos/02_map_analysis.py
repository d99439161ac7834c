# %% Loading a map and reading its graph-theoretic profile
#
# The packaged 13-node demo map ships as a CSV adjacency matrix with numeric
# [-1, 1] weights plus a JSON sidecar. Loading converts every cell to the
# beta scale.

import fcmkit as fk

m = fk.load_fcm(fk.bundled_demo_path())
print(f"{m.id}: {m.n_nodes} nodes, {m.n_edges} edges, density {fk.density(m):.3f}")

# %% Per-node centralities and credibility weights
#
# Degree sums absolute in/out strengths; closeness and betweenness run on
# shortest paths with edge length 1/|beta| (stronger = closer). The
# consensus measure mixes the three, and its normalized defuzzified values
# become credibility weights.

report = fk.compute_report(m)
print(f"\n{'node':>6} {'degree':>8} {'closeness':>10} {'betweenness':>12} {'ccm':>8} {'cw':>7}")
for row in report.rows():
    print(
        f"{row['id']:>6} {row['degree']:8.2f} {row['closeness']:10.3f} "
        f"{row['betweenness']:12.2f} {row['ccm']:8.2f} {row['credibility_weight']:7.4f}"
    )

best = max(report.rows(), key=lambda r: r["credibility_weight"])
print(f"\nmost credible node: {best['id']} (cw {best['credibility_weight']:.3f})")

# %% Map-level centralization
ml = report.map_level
print(
    f"map-level centralization: degree {ml.degree:.3f}, closeness {ml.closeness:.5f}, "
    f"betweenness {ml.betweenness:.3f}, consensus {ml.consensus:.3f}"
)
