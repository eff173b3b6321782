#!/usr/bin/env python3
"""Independent brute-force oracle for the numbers-game scenario.

Recomputes, with plain set arithmetic and no shared code with the engine,
the model sequence produced by the five-event script and the truth of the
common-knowledge assertions checked by the acceptance suite.  Run directly
to print the values that are frozen into tests/acceptance_main.cpp.
"""

import sys


def initial_states(maxv):
    return sorted(
        (a, b, d)
        for a in range(maxv + 1)
        for b in range(maxv + 1)
        for d in range(maxv + 1)
        if a == b + d or b == a + d
    )


def knows_component(states, rel, s, comp):
    return len({w[comp] for w in states if rel(s, w)}) == 1


def run_script(maxv):
    """Returns (per-step state lists, final relations dict)."""
    s0 = initial_states(maxv)
    rels = {
        "a": lambda s, w: s[0] == w[0],
        "b": lambda s, w: s[1] == w[1],
        "d": lambda s, w: s[2] == w[2],
        "e": lambda s, w: True,
    }
    steps = [s0]
    # !(a:d) — a's relation becomes the intersection with d's
    rels["a"] = lambda s, w: s[0] == w[0] and s[2] == w[2]
    steps.append(steps[-1])
    # !(~K{a} nb)
    cur = steps[-1]
    steps.append([s for s in cur if not knows_component(cur, rels["a"], s, 1)])
    # !(b:d)
    rels["b"] = lambda s, w: s[1] == w[1] and s[2] == w[2]
    steps.append(steps[-1])
    # !(~K{b} na)
    cur = steps[-1]
    steps.append([s for s in cur if not knows_component(cur, rels["b"], s, 0)])
    # !(K{a} nb)
    cur = steps[-1]
    steps.append([s for s in cur if knows_component(cur, rels["a"], s, 1)])
    return steps, rels


def common_knowledge(states, rels, groups, body):
    """Per-state truth of C over `groups` (each a tuple of agent names) of body,
    with trivial condition: body must hold at s and at every state reachable
    from s via chains of group-indistinguishability steps."""

    def related(g, s, w):
        return all(rels[agent](s, w) for agent in g)

    result = {}
    for s in states:
        seen = {s}
        frontier = [s]
        while frontier:
            u = frontier.pop()
            for g in groups:
                for w in states:
                    if w not in seen and related(g, u, w):
                        seen.add(w)
                        frontier.append(w)
        result[s] = all(body(w) for w in seen)
    return result


def knows_all_three(states, rels, agent, s):
    return all(knows_component(states, rels[agent], s, c) for c in range(3))


def main():
    maxv = int(sys.argv[1]) if len(sys.argv) > 1 else 12

    print(f"|S0| at max=3  : {len(initial_states(3))}")
    print(f"|S0| at max={maxv} : {len(initial_states(maxv))}")

    steps, rels = run_script(6)
    s2 = steps[2]
    expect = [s for s in initial_states(6) if s[2] > 0 and s[0] >= s[2] and s[0] + s[2] <= 6]
    print(f"S2 at max=6 matches {{sd>0, sa>=sd, sa+sd<=max}}: {sorted(s2) == expect}")

    steps, rels = run_script(maxv)
    counts = [len(s) for s in steps]
    print(f"per-step |S| at max={maxv}: {counts}")
    s5 = steps[-1]
    print(f"S5 at max={maxv}: {sorted(s5)}")

    def item1_body(w):
        sat = lambda v: min(v, maxv)  # noqa: E731 — saturating addition
        return 0 < w[2] and w[2] <= w[0] and w[0] < sat(w[2] + w[2]) and sat(w[2] + w[2]) <= w[1]

    c1 = common_knowledge(s5, rels, [("a",), ("b",), ("d",), ("e",)], item1_body)
    print(f"item-1 C-formula true at: {sorted(s for s, v in c1.items() if v)}")
    print(f"item-1 body true at:      {sorted(s for s in s5 if item1_body(s))}")

    for label, groups in (("{a,b,d}", [("a",), ("b",), ("d",)]),
                          ("{a,b,e}", [("a",), ("b",), ("e",)])):
        agents = [g[0] for g in groups]
        body = lambda w: all(knows_all_three(s5, rels, ag, w) for ag in agents)  # noqa: E731
        c2 = common_knowledge(s5, rels, groups, body)
        print(f"item-2 reading {label}: body true at {sorted(s for s in s5 if body(s))}, "
              f"C true at {sorted(s for s, v in c2.items() if v)}")

    s6 = [s for s in s5 if s[2] == 1]
    print(f"after !(nd=1): {sorted(s6)}")


if __name__ == "__main__":
    main()
