"""Re-derive the characteristic-class identities and print their traces."""

from extforge.charclass import identity_names, verify_paper_identity

for name in identity_names():
    params = {"m": 3, "n": 3, "k": 1} if name == "CPCP_LAMBDAC" else {}
    report = verify_paper_identity(name, **params)
    print(report.to_text())
    print()

print("with mod-2 reduction assumed to detect 2-torsion:")
print(verify_paper_identity("W7_DERIVATION", two_torsion_detected=True).to_text())
