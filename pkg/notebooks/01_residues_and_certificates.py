# # Residues of p/q and the two certificates
#
# Everything here is exact: roots are Fractions and so are the residues.

from fractions import Fraction

from interlace_majorize import PolyPair
from interlace_majorize.majorize import majorizes
from interlace_majorize.residue import decompose, necessary_condition, strong_majorization_certificate

# ## A degree-2 pair

pair = PolyPair.from_roots([2, -2], [1, -1])
print(pair.p, "|", pair.q)

rep = decompose(pair, "pq")
print("residues of p/q:", [str(r) for r in rep.residues])
print("they sum to sum(mu) - sum(lam):", rep.total)

# The same pair read the other way round, q/p:

rep = decompose(pair, "qp")
print("partial sums of q/p:", [str(s) for s in rep.partial_sums])

print(necessary_condition(pair).kind.value)
print(strong_majorization_certificate(pair).kind.value)

# ## Majorization is not enough
#
# Here lam majorizes mu with equality of the first two partial sums.

lam = [5, 1, -1, -5]
mu = [4, 2, -2, -4]
print(majorizes(lam, mu))

cert = strong_majorization_certificate(PolyPair.from_roots(lam, mu))
print(cert.kind.value, "witness k =", cert.witness_k, "value =", cert.witness_value)

# ## The necessary condition can refute

cert = necessary_condition(PolyPair.from_roots([1, -1], [2, -2]))
print(cert.kind.value, cert.witness_k, cert.witness_value)

# ## Shared roots are deflated first

cert = strong_majorization_certificate(PolyPair.from_roots([5, 1, -1, -5], [4, 1, -2, -4]))
print("kept positions:", cert.detail.positions, "->", cert.kind.value)

Fraction(63, 80) - Fraction(15, 16)
