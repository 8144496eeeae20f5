"""Independent reference values for the C++ tests (numpy/scipy only).

Run: python3 tests/oracles/oracle.py
The printed numbers are frozen into tests/oracle_values.hpp.
"""
import itertools

import numpy as np
from scipy.optimize import minimize, minimize_scalar


def atiyah_modulus(points):
    """|D| from monic polynomials with stereographic roots (x+iy)/(1+z).

    Each linear factor u0 (t - t_ij) contributes |u0| = sqrt((1+z)/2).
    """
    pts = np.asarray(points, float)
    n = len(pts)
    rows, scale = [], 1.0
    for i in range(n):
        roots = []
        for j in range(n):
            if i == j:
                continue
            v = pts[j] - pts[i]
            v /= np.linalg.norm(v)
            roots.append((v[0] + 1j * v[1]) / (1 + v[2]))
            scale *= np.sqrt((1 + v[2]) / 2)
        rows.append(np.poly(roots)[::-1])
    return scale * abs(np.linalg.det(np.array(rows)))


def riesz(x, n, p=1.0):
    pts = x.reshape(n, 3)
    pts = pts / np.linalg.norm(pts, axis=1)[:, None]
    return sum(np.linalg.norm(pts[i] - pts[j]) ** -p for i, j in itertools.combinations(range(n), 2))


def best_of(fun, n, starts, rng, dim=3):
    best = np.inf
    for _ in range(starts):
        r = minimize(fun, rng.normal(size=dim * n), args=(n,), method="BFGS", options={"gtol": 1e-11, "maxiter": 20000})
        best = min(best, r.fun)
    return best


def central(x, n):
    pts = x.reshape(n, 3)
    e = 0.5 * (pts ** 2).sum()
    for i, j in itertools.combinations(range(n), 2):
        e += 1 / np.linalg.norm(pts[i] - pts[j])
    return e


def lj(x, n):
    pts = x.reshape(n, 3)
    e = 0.0
    for i, j in itertools.combinations(range(n), 2):
        r = np.linalg.norm(pts[i] - pts[j])
        e += r ** -12 - 2 * r ** -6
    return e


def group_size(gens):
    group = [np.eye(3)]
    i = 0
    while i < len(group):
        for g in gens:
            m = group[i] @ g
            if not any(np.allclose(m, h, atol=1e-9) for h in group):
                group.append(m)
        i += 1
    return len(group)


def rot(axis, angle):
    a = np.asarray(axis, float) / np.linalg.norm(axis)
    k = np.array([[0, -a[2], a[1]], [a[2], 0, -a[0]], [-a[1], a[0], 0]])
    return np.eye(3) + np.sin(angle) * k + (1 - np.cos(angle)) * k @ k


def main():
    rng = np.random.default_rng(2024)
    four = [[0.1, 0.2, 0.3], [0.5, -0.2, 0.1], [-0.3, 0.4, 0.7], [0.2, 0.9, -0.4]]
    print("atiyah_four_points", repr(atiyah_modulus(four)))
    six = [[0.3, -0.1, 0.2], [1.1, 0.4, -0.3], [-0.6, 0.8, 0.5], [0.2, -0.9, 0.7], [0.9, 0.9, 0.9], [-0.4, -0.5, -0.8]]
    print("atiyah_six_points", repr(atiyah_modulus(six)))
    eq = [[1, 0, 0], [-0.5, np.sqrt(3) / 2, 0], [-0.5, -np.sqrt(3) / 2, 0]]
    print("atiyah_equilateral", repr(atiyah_modulus(eq)))

    for n in (5, 6):
        print(f"thomson_{n}", repr(best_of(riesz, n, 20, rng)))
    print("central_2_radius", repr(minimize_scalar(lambda r: 1 / r + r * r / 4, bounds=(0.1, 5), method="bounded",
                                                   options={"xatol": 1e-12}).x / 2))
    print("monopole_2_separation", repr(minimize_scalar(lambda r: -r + r * r / 4, bounds=(0.1, 5), method="bounded",
                                                        options={"xatol": 1e-12}).x))
    print("central_13", repr(best_of(central, 13, 20, rng)))
    phi = (1 + 5 ** 0.5) / 2
    ico = np.array([v for a in (-1, 1) for b in (-phi, phi) for v in ([0, a, b], [a, b, 0], [b, 0, a])], float)
    ico /= np.linalg.norm(ico[0])

    def centred_icosahedron(r):
        return lj(np.vstack([[0, 0, 0], r * ico]).ravel(), 13)

    print("lj_13", repr(minimize_scalar(centred_icosahedron, bounds=(0.8, 1.2), method="bounded",
                                        options={"xatol": 1e-12}).fun))
    print("icosahedron_edge", repr(4 / np.sqrt(10 + 2 * np.sqrt(5))))
    print("order_O_h", group_size([rot([0, 0, 1], np.pi / 2), rot([1, 1, 1], 2 * np.pi / 3), -np.eye(3)]))
    print("order_Y", group_size([rot([0, 1, phi], 2 * np.pi / 5), rot([0, -1, phi], 2 * np.pi / 5)]))

    # Tammes n = 6 by Riesz continuation in scipy, reported as the min distance
    x = rng.normal(size=18)
    for p in (2, 4, 8, 16, 32, 64, 128, 256):
        x = minimize(lambda y: np.log(riesz(y, 6, p)) / p, x, method="BFGS", options={"gtol": 1e-12}).x
    pts = x.reshape(6, 3)
    pts /= np.linalg.norm(pts, axis=1)[:, None]
    print("tammes_6", repr(min(np.linalg.norm(pts[i] - pts[j]) for i, j in itertools.combinations(range(6), 2))))


if __name__ == "__main__":
    main()
