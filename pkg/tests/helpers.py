from eotransducer.physics import EOParams


def random_params(rng, temperature=0.0):
    """Cooperativity in [0.01, 10], coupling ratios in [0.5, 1]."""
    C = 10 ** rng.uniform(-2, 1)
    return EOParams.from_dimensionless(C, rng.uniform(0.5, 1.0), rng.uniform(0.5, 1.0),
                                       temperature=temperature)


def kappa_of(params):
    return params.kappa_m_c + params.kappa_m_i


def rel_err(a, b):
    d = abs(a - b)
    return 0.0 if d == 0 else d / max(abs(a), abs(b))
