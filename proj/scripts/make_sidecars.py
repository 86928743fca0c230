#!/usr/bin/env python3
"""Build SDN placement and partition sidecar files for the bundled networks.

Partitions: nodes are clustered geographically (k-means on coordinates,
several deterministic seeds), the cross-cluster links are covered with a
greedy vertex cover, and the cover becomes the SDN border set. A candidate
is accepted when removing the borders leaves exactly k components; among
accepted candidates the one with the fewest borders wins.

Stacked placements: the ceil(n/2) highest-degree nodes (ties by name).

Usage: make_sidecars.py <data-dir>
"""
import json
import math
import os
import random
import sys

import networkx as nx

TARGETS = {
    "nobel-eu": [2, 4, 6],
    "cost266": [2, 4, 10],
    "janos-us-ca": [2, 4, 6, 10],
}


def read_sndlib(path):
    g = nx.MultiGraph()
    section = None
    with open(path) as f:
        for raw in f:
            line = raw.split("#", 1)[0].strip()
            if not line or line.startswith("?"):
                continue
            if line.endswith("(") and line.split()[0] in ("NODES", "LINKS", "DEMANDS"):
                section = line.split()[0]
                continue
            if line == ")":
                section = None
                continue
            tok = line.replace("(", " ").replace(")", " ").split()
            if section == "NODES":
                g.add_node(tok[0], pos=(float(tok[1]), float(tok[2])))
            elif section == "LINKS":
                g.add_edge(tok[1], tok[2], key=tok[0])
    return g


def kmeans(points, k, seed, iters=50):
    rnd = random.Random(seed)
    names = sorted(points)
    centers = [points[n] for n in rnd.sample(names, k)]
    assign = {}
    for _ in range(iters):
        assign = {
            n: min(range(k), key=lambda c: (math.dist(points[n], centers[c]), c))
            for n in names
        }
        new_centers = []
        for c in range(k):
            members = [points[n] for n in names if assign[n] == c]
            if not members:
                new_centers.append(centers[c])
                continue
            new_centers.append((sum(p[0] for p in members) / len(members),
                                sum(p[1] for p in members) / len(members)))
        if new_centers == centers:
            break
        centers = new_centers
    return assign


def cover(g, assign):
    cross = {(min(u, v), max(u, v)) for u, v in g.edges() if assign[u] != assign[v]}
    borders = set()
    while cross:
        count = {}
        for u, v in cross:
            count[u] = count.get(u, 0) + 1
            count[v] = count.get(v, 0) + 1
        best = min(count, key=lambda n: (-count[n], n))
        borders.add(best)
        cross = {e for e in cross if best not in e}
    return borders


def partition(g, k):
    points = {n: g.nodes[n]["pos"] for n in g.nodes}
    best = None
    for seed in range(400):
        assign = kmeans(points, k, seed)
        borders = cover(g, assign)
        rest = g.subgraph([n for n in g.nodes if n not in borders])
        comps = sorted((sorted(c) for c in nx.connected_components(rest)), key=lambda c: c[0])
        if len(comps) != k:
            continue
        key = (len(borders), sorted(borders))
        if best is None or key < best[0]:
            best = (key, borders, comps)
    if best is None:
        raise SystemExit("no %d-way separator found" % k)
    _, borders, comps = best
    subdomains = {n: i for i, comp in enumerate(comps) for n in comp}
    return {"sdn_nodes": sorted(borders), "subdomains": dict(sorted(subdomains.items()))}


def placement(g):
    n = g.number_of_nodes()
    ranked = sorted(g.nodes, key=lambda v: (-g.degree(v), v))
    return {"sdn_nodes": sorted(ranked[: (n + 1) // 2])}


def main():
    data_dir = sys.argv[1]
    for name, ks in TARGETS.items():
        g = read_sndlib(os.path.join(data_dir, name + ".txt"))
        with open(os.path.join(data_dir, name + ".stacked.json"), "w") as f:
            json.dump(placement(g), f, indent=2)
            f.write("\n")
        for k in ks:
            p = partition(g, k)
            with open(os.path.join(data_dir, "%s.part%d.json" % (name, k)), "w") as f:
                json.dump(p, f, indent=2)
                f.write("\n")
            print(name, k, "borders:", len(p["sdn_nodes"]), p["sdn_nodes"])


if __name__ == "__main__":
    main()
