"""Shared assertions for projective identities."""


def proportional(u, v, F=None) -> bool:
    """u and v are nonzero and equal up to a scalar (all 2x2 cross terms vanish).

    Pass the prime field F when the entries are residues.
    """
    u, v = list(u), list(v)
    if len(u) != len(v) or not any(u) or not any(v):
        return False
    p = getattr(F, "p", None)
    for i in range(len(u)):
        for j in range(i):
            t = u[i] * v[j] - u[j] * v[i]
            if (t % p if p else t) != 0:
                return False
    return True


def form_proportional(a, b) -> bool:
    """Two TernaryForms (or MultiPolys) agree up to a nonzero scalar."""
    if hasattr(a, "coeffs"):
        return a.degree == b.degree and proportional(a.coeffs, b.coeffs, a.field)
    da, db = a.as_dict(), b.as_dict()
    if set(da) != set(db):
        return False
    keys = sorted(da)
    return proportional([da[k] for k in keys], [db[k] for k in keys], a.ring.field)
