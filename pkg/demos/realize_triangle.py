"""Recover a triangle boundary from a finite Rips complex."""

from fractions import Fraction as F

from ripslab import EmbeddedComplex, EmbeddingError, SimplicialComplex, compute_epsilon0, realize

coords = {0: (F(0), F(0)), 1: (F(1), F(0)), 2: (F(1, 2), F(433, 500))}
ec = EmbeddedComplex(SimplicialComplex([(0, 1), (1, 2), (0, 2)]), coords)

br = compute_epsilon0(ec)
print(f"eps0 in [{float(br.lower):.9f}, {br.upper:.9f}] over {br.families} minimal empty families")
print("attained by", br.argmin.faces)

for sampler in ("adaptive", "plan"):
    try:
        rep = realize(ec, sampler=sampler, max_points=4000)
    except EmbeddingError as exc:  # the certified plan can exceed the point budget
        print(f"{sampler}: {exc}")
        continue
    print(f"{sampler}: eps={rep.eps} points={rep.n_points} rounds={rep.rounds} "
          f"K={rep.profile_K.betti} R(X)={rep.profile_RX.betti} cover={rep.cover_ok} "
          f"stars contractible={rep.stars_contractible}")
