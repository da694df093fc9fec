"""critcycles: exact arithmetic for quadratic rational maps with a small
critical cycle.

Subpackages and modules build on each other in this order: numbers (exact
scalars), polys (polynomial domains, resultants, root finding), dynamics
(rational maps, dynatomic polynomials, multiplier invariants), moduli
(critical-cycle moduli curves and their parametrizations), curves
(dynamical modular curves over a parameter line), portraits (rational
preperiodic structure and the portrait census), cli (command line front
end).
"""

__version__ = "0.1.0"
