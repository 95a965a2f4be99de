"""Machine-readable run reports, bounds tables, and rendered figures.

The report path always produces deterministic JSON (sorted keys, no
timestamps); the bounds table additionally renders a growth figure next to
its CSV/JSON output when asked.
"""

from __future__ import annotations

import csv
import io
import json

from .engine import BasicStep, cost, trace_json


def run_report(computation, result, violations, embedding=None, cat=None):
    final_objects = {}
    if result is not None:
        for v in sorted(result.diagram.graph.vertices):
            final_objects[v] = cat.describe(result.diagram.obj_of[v])
    report = {
        "computationKind": computation.kind,
        "stepCount": len(computation.steps),
        "cost": cost(computation),
        "constructivityViolations": [v.as_dict() for v in violations],
        "finalObjects": final_objects,
        "embedding": embedding,
        "trace": trace_json(result) if result is not None else [],
    }
    return report


def report_to_json(report):
    return json.dumps(report, sort_keys=True, indent=2) + "\n"


def embedding_json(emb):
    if emb is None:
        return None
    return {
        "vertexMap": dict(sorted(emb.vertex_map.items())),
        "edgeMap": dict(sorted(emb.edge_map.items())),
    }


# -- bounds table ------------------------------------------------------------


def bounds_csv(rows):
    buf = io.StringIO()
    writer = csv.writer(buf)
    writer.writerow(["m", "preimageCostBound", "projectedFacets",
                     "facetLowerBoundOnCost"])
    for r in rows:
        writer.writerow([r.m, r.preimage_cost_bound, r.projected_facets,
                         r.facet_lower_bound_on_cost])
    return buf.getvalue()


def bounds_json(rows):
    return json.dumps([r.as_dict() for r in rows], sort_keys=True,
                      indent=2) + "\n"


def render_growth_figure(rows, path):
    """Log-scale plot of the projected facet count against the cost bound."""
    import matplotlib
    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    ms = [r.m for r in rows]
    fig, ax = plt.subplots(figsize=(6, 4))
    ax.semilogy(ms, [r.projected_facets for r in rows], "o-",
                label="facets of the projected cyclic polytope")
    ax.semilogy(ms, [r.facet_lower_bound_on_cost for r in rows], "s--",
                label="isqrt lower bound on colimit cost")
    ax.semilogy(ms, [r.preimage_cost_bound for r in rows], "^:",
                label="preimage facet count (formula value)")
    ax.set_xlabel("m")
    ax.set_ylabel("count (log scale)")
    ax.set_title("Image-functor lower-bound growth")
    ax.legend(fontsize=8)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)


def render_cost_figure(points, path, title):
    """Scatter of compile input size vs output cost with the pinned bound."""
    import matplotlib
    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    xs = [p[0] for p in points]
    ys = [p[1] for p in points]
    bound = max(p[2] for p in points)
    fig, ax = plt.subplots(figsize=(5, 4))
    ax.scatter(xs, ys, marker="x", label="corpus item")
    lim = max(xs + [1])
    ax.plot([0, lim], [0, bound * lim], "--",
            label=f"pinned multiplier {bound}")
    ax.set_xlabel("input size")
    ax.set_ylabel("computation cost")
    ax.set_title(title)
    ax.legend(fontsize=8)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
