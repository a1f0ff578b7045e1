"""Parsing identities into one-nested laws.

A law is written with explicit parentheses.  Its left side must be the
right-nested product x1(x2(...xn)); the right side is recorded as a nest
trace: where the first pairing happens and whether each later factor is
absorbed from the left or from the right.
"""

from loopcoh import parse_law, render
from loopcoh.dsl import ParseError, ir_to_json, substitute_neutral

for text in [
    "(y*(x*(y*z))) = ((y*(x*y))*z)",  # left Bol
    "(w*(x*(y*z))) = (w*((x*y)*z))",
    "(x*(y*(x*z))) = (((x*y)*x)*z)",  # left Moufang
]:
    ir = parse_law(text)
    print(text)
    print("   IR:", ir_to_json(ir))
    print("   runs:", [(mv.value, k) for mv, k in ir.run_profile])
    print("   rendered back:", render(ir))

print("\nPutting the identity in for x in the Bol law leaves left alternativity:")
print("  ", render(substitute_neutral(parse_law("(y*(x*(y*z))) = ((y*(x*y))*z)"), 2)))

print("\nMalformed input is reported with a position:")
for bad in ["(x*(y*z) = ((x*y)*z)", "(x*y) = (y*x)"]:
    try:
        parse_law(bad)
    except ParseError as exc:
        print(f"   {bad!r}: {exc}")
