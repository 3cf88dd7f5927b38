"""qvertex: exact verification of quantum vertex representations built from
finite subgroups of SU(2).

Everything is computed in exact arithmetic over cyclotomic rationals extended
by v with v^2 = q; every identity check compares Laurent coefficients, never
floats (the single numerical component is the positivity probe).
"""

__version__ = "0.1.0"
