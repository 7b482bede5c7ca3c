# Module imports
from mixed_abelian_cayley.families import FAMILIES

max_k = 12

for name, family in FAMILIES.items():
    for k in range(family.min_k, max_k + 1):
        certificate = family.certify(k)
        status = "ok" if certificate.holds else "FAILED"
        print(f"{name.value:8s} k={k:2d} N={certificate.N:5d} r={certificate.r} z={certificate.z} {status}")
