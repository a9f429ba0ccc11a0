"""
Newton polyhedra, faces, and the weighted Euler identity
========================================================

A quick tour of the polyhedral layer: build the Newton polyhedron of a
sparse polynomial, ask which coordinate axes it touches, minimize linear
functionals over it, and watch the Euler identity hold on face polynomials.
"""

from polyloj import parse_polynomial
from polyloj.polyhedra import all_faces, d_and_face, is_convenient, missing_axes, newton_polyhedron
from polyloj.polynomials import euler_residual, face_part

# Two polynomials in two variables.  The first one never touches the x2
# axis (every term contains x1), the second touches both axes.
g = parse_polynomial("(x1^2 - 1)^2 + (x1*x2 - 1)^2", 2)
h = parse_polynomial("(x1^2 - 1)^2 + (x2^2 - 1)^2", 2)

for name, f in (("g", g), ("h", h)):
    gamma = newton_polyhedron(f)
    print(f"{name} = {f}")
    print(f"  vertices      : {sorted(gamma.vertices)}")
    print(f"  convenient    : {is_convenient(gamma)}")
    print(f"  missing axes  : {list(missing_axes(gamma)) or 'none'}")
print()

# Minimizing a covector q over the polyhedron returns the minimum value d
# and the face where it is attained.  Negative d means the face lies "at
# infinity": scaling along q blows the corresponding monomials up.
gamma = newton_polyhedron(g)
for q in [(-1, -1), (0, -1), (1, 1)]:
    d, face = d_and_face(q, gamma)
    fq = face_part(g, face)
    print(f"q = {q}: d = {d}, face vertices {sorted(face.points)}, g_face = {fq}")
print()

# Every face polynomial is weighted homogeneous: sum_j q_j x_j d/dx_j
# reproduces d times the face polynomial, so the residual is identically 0.
for face in all_faces(gamma):
    residual = euler_residual(face_part(g, face), face.witness_q, face.d)
    print(f"face dim {face.dim}, witness q = {face.witness_q}: residual = {residual}")
