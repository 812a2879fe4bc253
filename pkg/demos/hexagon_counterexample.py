"""Six points in R^4 where the local pi_0 check fails.

The two alternating triangles of the hexagon are not Rips faces, but their
hulls cross at the origin.  That crossing is a component of the local
intersection that no link hull reaches.
"""

from ripslab import check_pi0_surjectivity, decompose, lifted_hexagon_cloud, rips_complex
from ripslab.geometry import sq_dist

cloud = lifted_hexagon_cloud()
print("squared distances:")
for i in range(6):
    print("  ", " ".join(f"{float(sq_dist(cloud.points[i], cloud.points[j])):6.3f}" for j in range(6)))

link = rips_complex(decompose(cloud, 0).x_v)
print("link of v0:", link.edges())

rep = check_pi0_surjectivity(cloud, 0)
print(f"pieces={rep.pieces_total} components={rep.components_total} "
      f"reached by the link={rep.components_with_link_piece} pass={rep.passed}")
print("unreached component:", rep.witness)
