"""Compute the five basic finite constructions on small sets and print them."""
from catlim import FinFunction, FinSet, coequalizer, coproduct, equalizer, product, pullback

x = FinSet("X", ["1", "2", "3"])
y = FinSet("Y", ["a", "b"])
pt = FinSet("pt", ["*"])

print("product X x Y:", product(x, y).apex.elements)
to_pt = lambda s: FinFunction(s, pt, {e: "*" for e in s.elements})
print("pullback over a point:", len(pullback(to_pt(x), to_pt(y)).apex), "elements")

f = FinFunction(x, y, {"1": "a", "2": "b", "3": "b"})
const_b = FinFunction(x, y, {e: "b" for e in x.elements})
eq = equalizer(f, const_b)
print("equalizer of f and const b picks out:", sorted(eq.legs["I1"](e) for e in eq.apex.elements))

print("coproduct X + Y:", coproduct(x, y).apex.elements)

r = FinSet("R", ["r1", "r2"])
z = FinSet("Z", ["1", "2", "3", "4"])
co = coequalizer(FinFunction(r, z, {"r1": "1", "r2": "2"}), FinFunction(r, z, {"r1": "2", "r2": "3"}))
print("coequalizer classes:", {e: co.legs["I2"](e) for e in z.elements})
