#!/usr/bin/env python3
"""Generate the bundled reference topology and scenarios.

30 routers, 16 consumers, 2 producers, 3 attackers. Attackers A0, A1 and
A2 share routers on their way to the /nsf/fia producer; all /cnn/news
traffic is routed around those routers.

Usage: gen_reference_topology.py [output-dir]
"""

import json
import sys
from collections import deque
from pathlib import Path

ROUTERS = [f"R{i}" for i in range(30)]

CORE_EDGES = [
    (0, 1), (1, 2), (2, 3), (3, 4), (3, 15), (3, 6), (3, 12), (4, 5),
    (4, 7), (6, 10), (6, 11), (5, 8), (7, 8), (8, 9), (9, 13), (13, 14),
    (14, 15), (15, 16), (16, 17), (17, 18), (18, 19), (19, 20), (20, 21),
    (21, 22), (22, 23), (23, 24), (24, 25), (25, 26), (26, 27), (27, 28),
    (28, 29), (29, 0), (0, 8), (1, 9), (13, 19), (14, 18), (21, 25),
    (22, 26), (20, 24), (9, 27), (23, 28),
    # side exits of the attack-path routers
    (10, 11), (11, 12), (12, 6), (12, 8), (6, 9),
]

P0 = {"node": "P0", "router": "R3", "prefix": "/nsf/fia"}
P1 = {"node": "P1", "router": "R20", "prefix": "/cnn/news"}

# A0 and A1 meet at R6; both branches meet A2's at the victim R3.
ATTACKERS = [("A0", "R10"), ("A1", "R11"), ("A2", "R12")]
ATTACK_PATHS = {
    "A0": ["R10", "R6", "R3"],
    "A1": ["R11", "R6", "R3"],
    "A2": ["R12", "R3"],
}

# /cnn/news next hop of attack-path routers. The side chain R10 -> R11 ->
# R12 -> R6 -> R9 carries honest traffic across several attacked routers, each
# time on an interface that never sees a fake interest.
SIDE_EXITS = {"R10": "R11", "R11": "R12", "R12": "R6", "R6": "R9", "R3": "R2"}

# (consumer, access router, producer). P0 consumers reach the victim
# through its clean interfaces.
CONSUMERS = [
    ("C0", "R10", P1), ("C1", "R11", P1), ("C2", "R12", P1), ("C3", "R6", P1),
    ("C4", "R7", P1), ("C5", "R4", P1), ("C6", "R16", P0), ("C7", "R2", P0),
    ("C8", "R1", P0), ("C9", "R0", P0), ("C10", "R14", P0), ("C11", "R17", P0),
    ("C12", "R13", P0), ("C13", "R5", P0), ("C14", "R22", P1), ("C15", "R25", P1),
]

CORE_LINK = {"bandwidth_bps": 100e6, "delay_ms": 1.0, "queue_packets": 100}
ACCESS_LINK = {"bandwidth_bps": 10e6, "delay_ms": 1.0, "queue_packets": 100}
PRODUCER_LINK = {"bandwidth_bps": 100e6, "delay_ms": 1.0, "queue_packets": 100}


def bfs_tree(adj, target, allowed):
    """Next hop towards target for every allowed router (ties: lowest id)."""
    nxt = {target: None}
    q = deque([target])
    while q:
        cur = q.popleft()
        for nb in sorted(adj[cur], key=lambda r: int(r[1:])):
            if nb in allowed and nb not in nxt:
                nxt[nb] = cur
                q.append(nb)
    return nxt


def walk(nexthop, start, target):
    path = [start]
    while path[-1] != target:
        path.append(nexthop[path[-1]])
        assert len(path) <= len(ROUTERS), "routing loop"
    return path


def build():
    nodes = [{"id": r, "role": "router"} for r in ROUTERS]
    nodes += [{"id": c, "role": "consumer"} for c, _, _ in CONSUMERS]
    nodes += [{"id": p["node"], "role": "producer"} for p in (P0, P1)]
    nodes += [{"id": a, "role": "attacker"} for a, _ in ATTACKERS]

    next_iface = {n["id"]: 0 for n in nodes}
    iface_to = {}  # (node, neighbour) -> iface
    links = []

    def connect(a, b, params):
        ia, ib = next_iface[a], next_iface[b]
        next_iface[a] += 1
        next_iface[b] += 1
        iface_to[(a, b)] = ia
        iface_to[(b, a)] = ib
        links.append({"a": a, "a_iface": ia, "b": b, "b_iface": ib, **params})

    adj = {r: set() for r in ROUTERS}
    for x, y in CORE_EDGES:
        a, b = f"R{x}", f"R{y}"
        adj[a].add(b)
        adj[b].add(a)
        connect(a, b, CORE_LINK)
    for p in (P0, P1):
        connect(p["router"], p["node"], PRODUCER_LINK)
    for c, r, _ in CONSUMERS:
        connect(r, c, ACCESS_LINK)
    for a, r in ATTACKERS:
        connect(r, a, ACCESS_LINK)

    attack_routers = {r for p in ATTACK_PATHS.values() for r in p}
    clean = set(ROUTERS) - attack_routers

    p0_tree = bfs_tree(adj, P0["router"], clean | {P0["router"]})
    for path in ATTACK_PATHS.values():
        for here, there in zip(path, path[1:]):
            assert p0_tree.get(here, there) == there, (here, p0_tree.get(here))
            p0_tree[here] = there
    p1_tree = bfs_tree(adj, P1["router"], clean)
    for r, exit_ in SIDE_EXITS.items():
        assert exit_ in adj[r], (r, exit_)
        p1_tree[r] = exit_
    assert set(p0_tree) == set(ROUTERS) and set(p1_tree) == set(ROUTERS)

    for a, r in ATTACKERS:
        assert walk(p0_tree, r, P0["router"]) == ATTACK_PATHS[a], a

    # No honest interest may enter a router on an interface that carries
    # fake interests.
    attack_hops = {(x, y) for p in ATTACK_PATHS.values() for x, y in zip(p, p[1:])}
    for c, r, p in CONSUMERS:
        tree = p0_tree if p is P0 else p1_tree
        path = walk(tree, r, p["router"])
        hops = set(zip(path, path[1:]))
        assert not hops & attack_hops, (c, path)

    fib = {}
    for r in ROUTERS:
        routes = []
        for p, tree in ((P0, p0_tree), (P1, p1_tree)):
            hop = tree[r]
            out = p["node"] if hop is None else hop
            routes.append({"prefix": p["prefix"], "iface": iface_to[(r, out)]})
        fib[r] = routes

    return {"nodes": nodes, "links": links, "fib": fib}


def scenario(attack):
    s = {
        "topology": "reference-topology.json",
        "seed": 1,
        "horizon_ms": 30000,
        "sample_interval_ms": 100,
        "pit_capacity_bytes": 122880,
        "interest_lifetime_ms": 4000,
        "cs_capacity_bytes": 0,
        "poseidon": {
            "mode": "off",
            "detection_interval_ms": 60,
            "wait_time_ms": 60,
            "scale": 2,
            "restore_fraction": 0.125,
            "quiet_period_ms": 1000,
            "alert_freshness_ms": 500,
            "omega_base": 3,
            "rho_base_fraction": 0.125,
        },
        "producers": [
            {"node": p["node"], "prefix": p["prefix"], "response_delay_ms": 1,
             "payload_size": 1024}
            for p in (P0, P1)
        ],
        "consumers": [
            {"node": c, "prefix": p["prefix"], "burst_count": 30, "burst_spacing_ms": 2,
             "burst_start_ms": 1000, "steady_start_ms": 1200, "steady_spacing_ms": 10.7,
             "stop_ms": 26000}
            for c, _, p in CONSUMERS
        ],
        "attackers": [],
    }
    if attack:
        s["attackers"] = [
            {"node": a, "prefix": P0["prefix"], "strategy": "non-existent",
             "spacing_ms": 1.337, "start_ms": 1000}
            for a, _ in ATTACKERS
        ]
    return s


def main():
    out = Path(sys.argv[1]) if len(sys.argv) > 1 else Path(__file__).resolve().parent.parent / "scenarios"
    out.mkdir(parents=True, exist_ok=True)
    (out / "reference-topology.json").write_text(json.dumps(build(), indent=1) + "\n")
    (out / "baseline.json").write_text(json.dumps(scenario(False), indent=2) + "\n")
    (out / "attack.json").write_text(json.dumps(scenario(True), indent=2) + "\n")


if __name__ == "__main__":
    main()
