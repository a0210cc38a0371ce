"""Two-player oracle games: a challenger hides a function, a solver
identifies it with as few oracle uses as possible.

One-bit game: the hidden function is one of the four maps B -> B and the
solver must say whether it is balanced. One quantum evaluation suffices
where a classical solver needs two.

Four-item search: the hidden function is one-hot at k and the solver must
name k. Two oracle uses (one in circuit, one confirmation) beat the three
worst-case classical lookups.

In the extended variants the hidden choice itself sits in a mode register:
a single evaluation entangles mode and answer, and one measurement fixes
the challenger's choice and the solver's answer simultaneously.
"""

import numpy as np

from qregsim import run_deutsch, run_grover2
from qregsim.algorithms import classical_deutsch_queries, classical_grover_queries
from qregsim.oracles import deutsch_family, kronecker_family

rng = np.random.default_rng(5)

print("=== one-bit game, fixed hidden mode ===")
for mode in range(4):
    trace, result = run_deutsch("original", k=mode)
    _, classical_cost = classical_deutsch_queries(deutsch_family()[mode])
    print(f"mode {result.mode_label}: t3 = {trace.state_at('t3')}")
    print(f"  answer {result.answer:<10} quantum uses {trace.oracle_queries},"
          f" classical needs {classical_cost}")
print()

print("=== one-bit game, mode register in superposition ===")
trace, result = run_deutsch("extended", rng=rng)
print("entangled pre-measurement state:")
print(" ", trace.state_at("t3"))
print(f"measuring [m] picked mode {result.mode_label}; measuring [a] answered"
      f" {result.answer}: consistent by construction")
print()

print("=== one-bit game, random-phase mixture ===")
trace, result = run_deutsch("mixture", rng=rng)
print(f"drawn phases: {tuple(round(p, 3) for p in result.phases)}")
print(f"mode {result.mode_label} -> {result.answer}; the phases never break the"
      " mode/answer correlation")
print()

print("=== four-item search, hidden mark k=2 ===")
trace, result = run_grover2("standard", k=2)
print("pre-measurement state:", trace.state_at("t3"))
print(f"answer {result.answer} (confirmed: {result.confirmed}),"
      f" oracle uses {result.oracle_uses}")
counts = [classical_grover_queries(kronecker_family(2)[int(rng.integers(4))], rng)[1]
          for _ in range(500)]
print(f"classical probing over 500 games: mean {np.mean(counts):.2f} lookups,"
      f" worst case {max(counts)}")
print()

print("=== four-item search, mark register in superposition ===")
trace, result = run_grover2("extended", rng=rng)
print("pre-measurement state:", trace.state_at("t3"))
print(f"measuring [m] chose {result.target}; measuring [a] answered"
      f" {result.answer}: always equal")
