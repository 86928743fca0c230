#!/usr/bin/env python3
"""Convert a topohub SNDlib JSON export into SNDlib native plain-text format.

Usage: topohub_to_sndlib.py <topohub.json> <network-name> > out.txt

The topohub package (pip install topohub) ships the SNDlib networks as
networkx node-link JSON under topohub/data/sndlib/. Node ids become the
SNDlib city names, links are numbered L1..Ln in edge order, and the
original SNDlib demand values are kept in the DEMANDS section. Routing
costs are written as 0.00 like the upstream files, which the parser maps
to hop-count metric 1.
"""
import json
import sys


def main():
    path, name = sys.argv[1], sys.argv[2]
    with open(path) as f:
        data = json.load(f)
    names = {n["id"]: n["name"] for n in data["nodes"]}
    out = []
    out.append("?SNDlib native format; type: network; version: 1.0")
    out.append("# network %s" % name)
    out.append("")
    out.append("# NODE SECTION")
    out.append("#")
    out.append("# <node_id> [(<longitude>, <latitude>)]")
    out.append("")
    out.append("NODES (")
    for n in data["nodes"]:
        lon, lat = n["pos"]
        out.append("  %s ( %.2f %.2f )" % (n["name"], lon, lat))
    out.append(")")
    out.append("")
    out.append("# LINK SECTION")
    out.append("#")
    out.append("# <link_id> ( <source> <target> ) <pre_installed_capacity> "
               "<pre_installed_capacity_cost> <routing_cost> <setup_cost> "
               "( {<module_capacity> <module_cost>}* )")
    out.append("")
    out.append("LINKS (")
    for i, e in enumerate(data["edges"], start=1):
        out.append("  L%d ( %s %s ) 0.00 0.00 0.00 0.00 ( )"
                   % (i, names[e["source"]], names[e["target"]]))
    out.append(")")
    out.append("")
    out.append("# DEMAND SECTION")
    out.append("#")
    out.append("# <demand_id> ( <source> <target> ) <routing_unit> "
               "<demand_value> <max_path_length>")
    out.append("")
    out.append("DEMANDS (")
    demands = data["graph"]["demands"]
    for src in sorted(demands, key=int):
        for dst in sorted(demands[src], key=int):
            s, t = names[int(src)], names[int(dst)]
            out.append("  %s_%s ( %s %s ) 1 %.2f UNLIMITED"
                       % (s, t, s, t, demands[src][dst]))
    out.append(")")
    print("\n".join(out))


if __name__ == "__main__":
    main()
