"""Default numerical constants"""

TAU_EQ = 1e-9           # equality, positivity and projection predicates
TAU_ZERO = 1e-15        # canonical form drops coefficients below this modulus
TAU_RANK = 1e-8         # relative singular value cutoff for numerical rank
ENUMERATION_BITS = 24   # desk-scale guard: at most 2**24 enumerated strings

THREADS_ENV_VAR = 'CSTAR_INFO_THREADS'
