#!/usr/bin/env python3
"""Independent step-by-step reference for the golden-trace fixtures.

Re-implements the random stream, node placement, LEACH / LEAST setup and
one simulation round from their written rules, without sharing any code with
the C++ library. Run it to regenerate tests/golden/*.txt:

    python3 tests/oracle/reference_sim.py tests/golden
"""

import math
import sys
from pathlib import Path

MASK = (1 << 64) - 1


class Stream:
    def __init__(self, seed):
        x = seed & MASK
        self.s = []
        for _ in range(4):
            x = (x + 0x9E3779B97F4A7C15) & MASK
            z = x
            z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & MASK
            z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & MASK
            self.s.append(z ^ (z >> 31))

    @staticmethod
    def rotl(v, k):
        return ((v << k) | (v >> (64 - k))) & MASK

    def next_u64(self):
        s = self.s
        result = (self.rotl((s[1] * 5) & MASK, 7) * 9) & MASK
        t = (s[1] << 17) & MASK
        s[2] ^= s[0]
        s[3] ^= s[1]
        s[1] ^= s[2]
        s[0] ^= s[3]
        s[2] ^= t
        s[3] = self.rotl(s[3], 45)
        return result

    def u01(self):
        return (self.next_u64() >> 11) * 2.0 ** -53

    def index(self, k):
        return min(int(self.u01() * k), k - 1)

    def bern(self, p):
        return self.u01() < p


def dist(a, b):
    return math.sqrt((a[0] - b[0]) ** 2 + (a[1] - b[1]) ** 2)


class Net:
    def __init__(self, bs, positions, energy):
        self.bs = bs
        self.pos = {i + 1: p for i, p in enumerate(positions)}
        self.energy = {i: energy for i in self.pos}
        self.alive = {i: energy > 0 for i in self.pos}
        self.last_ch = {}
        self.last_hn = {}
        self.parent = {}

    def p(self, i):
        return self.bs if i == 0 else self.pos[i]

    def alive_ids(self):
        return sorted(i for i in self.pos if self.alive[i])

    def farthest(self, i):
        return max([dist(self.p(i), self.pos[j]) for j in self.alive_ids() if j != i] or [0.0])

    def children(self, parent, tree):
        return sorted(c for c, p in tree.items() if p == parent)


def window(p, override=0):
    if override > 0:
        return override
    return 1 if p <= 0 else max(1, int(math.floor(1.0 / p + 1e-9)))


def eligible(last, r, w):
    return last is None or last < w * (r // w)


def threshold(p, r, w):
    denom = 1.0 - p * (r % w)
    return 1.0 if denom <= p else min(max(p / denom, 0.0), 1.0)


def elect(cands, t, rng):
    for _ in range(100):
        got = [c for c in cands if rng.bern(t)]
        if got:
            return got
    return [cands[rng.index(len(cands))]]


def nearest(cands, frm, net):
    return min(cands, key=lambda c: (dist(frm, net.p(c)), c))


def leach(net, params, r, rng):
    alive = net.alive_ids()
    w = window(params["p_ch"])
    cands = [i for i in alive if eligible(net.last_ch.get(i), r, w)] or alive
    chs = elect(cands, threshold(params["p_ch"], r, w), rng)
    tree, msgs = {}, []
    for c in chs:
        tree[c] = 0
        msgs.append(("ch_announce", c, None, net.farthest(c), 1))
    for i in alive:
        if i in chs:
            continue
        c = nearest(chs, net.p(i), net)
        tree[i] = c
        msgs.append(("join_request", i, c, dist(net.p(i), net.p(c)), 1))
    return {"tree": tree, "msgs": msgs, "chs": chs, "hns": [], "heirs": {}}


def least(net, tree, params, r, rng):
    if r <= 1:
        return leach(net, params, r, rng)
    fl = net.children(0, tree)
    w = window(params["p_hn"])
    cands = [i for i in net.alive_ids() if i not in fl and eligible(net.last_hn.get(i), r, w)]
    assert cands, "stall"
    hns = elect(cands, threshold(params["p_hn"], r, w), rng)
    msgs = [("hn_announce_to_bs", h, 0, dist(net.p(h), net.bs), 1) for h in hns]
    msgs.append(("bs_notify_first_level", 0, None, max([dist(net.bs, net.p(f)) for f in fl] or [0.0]), 1))

    heirs = {}
    for v in fl:
        kids = net.children(v, tree)
        if not kids:
            continue
        chosen = [c for c in kids if rng.bern(params["p_h"])]
        if not chosen:
            chosen = [kids[rng.index(len(kids))]]
        heirs[v] = chosen
        for h in chosen:
            reach = max([dist(net.p(h), net.p(s)) for s in kids if s != h] or [0.0])
            msgs.append(("heir_notify_parent", h, v, dist(net.p(h), net.p(v)), 1))
            msgs.append(("heir_announce_siblings", h, None, reach, 1 if len(kids) > 1 else 0))
            msgs.append(("heir_relay_to_bs", v, 0, dist(net.p(v), net.bs), 1))

    new = dict(tree)
    orphans = {v: net.children(v, tree) for v in fl}
    for v in fl:
        new.pop(v, None)
        for c in orphans[v]:
            new.pop(c)
    for v in fl:
        for h in heirs.get(v, []):
            new[h] = 0
    for v in fl:
        for c in orphans[v]:
            if c in heirs[v]:
                continue
            t = nearest(heirs[v], net.p(c), net)
            new[c] = t
            msgs.append(("relocate_join", c, t, dist(net.p(c), net.p(t)), 1))
    for v in fl:
        t = nearest(hns, net.p(v), net)
        new[v] = t
        msgs.append(("relocate_join", v, t, dist(net.p(v), net.p(t)), 1))
    return {"tree": new, "msgs": msgs, "chs": [], "hns": hns, "heirs": heirs}


def charge(net, i, amount, ledger, phase):
    assert net.alive[i]
    d = min(amount, net.energy[i])
    net.energy[i] -= d
    if net.energy[i] <= 0:
        net.energy[i] = 0.0
        net.alive[i] = False
    ledger[phase] += d


def run_round(net, params, eps, tf, proto, r, rng):
    for d in sorted(i for i in net.pos if not net.alive[i]):
        if d in net.parent or any(p == d for p in net.parent.values()):
            par = net.parent.pop(d, None)
            for c in net.children(d, net.parent):
                if par is None:
                    net.parent.pop(c)
                else:
                    net.parent[c] = par
    out = leach(net, params, r, rng) if proto == "leach" else least(net, net.parent, params, r, rng)
    for c in out["chs"]:
        net.last_ch[c] = r
    for h in out["hns"]:
        net.last_hn[h] = r
    net.parent = dict(out["tree"])
    ledger = {"setup": 0.0, "steady": 0.0}
    for kind, s, _, d, k in out["msgs"]:
        if s == 0 or not net.alive[s]:
            continue
        charge(net, s, eps * d * d * k, ledger, "setup")

    pool = net.alive_ids()
    k = int(math.floor(tf * len(pool)))
    for i in range(k):
        j = i + rng.index(len(pool) - i)
        pool[i], pool[j] = pool[j], pool[i]
    delivered = 0
    for s in sorted(pool[:k]):
        cur = s
        while cur != 0:
            par = net.parent.get(cur)
            if not net.alive[cur] or par is None:
                break
            cost = eps * dist(net.p(cur), net.p(par)) ** 2
            enough = cost <= net.energy[cur]
            charge(net, cur, cost, ledger, "steady")
            if not enough:
                break
            cur = par
        if cur == 0:
            delivered += 1

    depth = 0
    for i in net.parent:
        lvl, cur = 0, i
        while cur != 0:
            cur = net.parent[cur]
            lvl += 1
        depth = max(depth, lvl)
    return {
        "round": r,
        "dead": sum(1 for i in net.pos if not net.alive[i]),
        "total": sum(net.energy.values()),
        "setup": ledger["setup"],
        "steady": ledger["steady"],
        "width": len(net.children(0, net.parent)),
        "depth": depth,
        "delivered": delivered,
        "out": out,
    }


def fmt(v):
    return "%.17g" % v


def dump_setup(out):
    lines = ["cluster_heads " + " ".join(map(str, out["chs"])),
             "host_nodes " + " ".join(map(str, out["hns"]))]
    for v in sorted(out["heirs"]):
        lines.append("heirs %d %s" % (v, " ".join(map(str, out["heirs"][v]))))
    lines.append("tree")
    for c in sorted(out["tree"]):
        lines.append("%d %d" % (c, out["tree"][c]))
    lines.append("messages")
    for kind, s, rcv, d, k in out["msgs"]:
        lines.append("%s %d %s %s %d" % (kind, s, "*" if rcv is None else rcv, fmt(d), k))
    return "\n".join(lines) + "\n"


LINE_FIXTURE = [(10.0 * i - 5.0, 20.0) for i in range(1, 11)]
FIVE_FIXTURE = [(20.0, 30.0), (35.0, 80.0), (70.0, 60.0), (85.0, 15.0), (45.0, 45.0)]
DEFAULT_PARAMS = {"p_ch": 0.1, "p_hn": 0.2, "p_h": 0.1}


def leach_line():
    net = Net((50.0, 50.0), LINE_FIXTURE, 0.1)
    return dump_setup(leach(net, {"p_ch": 0.3, "p_hn": 0.2, "p_h": 0.1}, 1, Stream(42)))


def least_five():
    net = Net((50.0, 50.0), FIVE_FIXTURE, 1.0)
    rng = Stream(7)
    first = leach(net, DEFAULT_PARAMS, 1, rng)
    for c in first["chs"]:
        net.last_ch[c] = 1
    second = least(net, first["tree"], DEFAULT_PARAMS, 2, rng)
    return "round 1\n" + dump_setup(first) + "round 2\n" + dump_setup(second)


def run_round_five():
    rng = Stream(7)
    pos = [(100.0 * rng.u01(), 100.0 * rng.u01()) for _ in range(5)]
    net = Net((50.0, 50.0), pos, 0.1)
    lines = []
    for r in (1, 2, 3):
        m = run_round(net, DEFAULT_PARAMS, 50e-9, 1.0, "least", r, rng)
        lines.append("round %d dead %d total %s setup %s steady %s width %d depth %d delivered %d" % (
            m["round"], m["dead"], fmt(m["total"]), fmt(m["setup"]), fmt(m["steady"]), m["width"], m["depth"],
            m["delivered"]))
    return "\n".join(lines) + "\n"


def stream_head():
    rng = Stream(0)
    lines = ["%d" % rng.next_u64() for _ in range(4)]
    rng = Stream(12345)
    lines += ["%d" % rng.next_u64() for _ in range(4)]
    return "\n".join(lines) + "\n"


GOLDEN = {
    "stream_head.txt": stream_head,
    "leach_line_seed42.txt": leach_line,
    "least_five_seed7.txt": least_five,
    "run_round_five_seed7.txt": run_round_five,
}

if __name__ == "__main__":
    out_dir = Path(sys.argv[1] if len(sys.argv) > 1 else ".")
    out_dir.mkdir(parents=True, exist_ok=True)
    for name, fn in GOLDEN.items():
        (out_dir / name).write_text(fn())
