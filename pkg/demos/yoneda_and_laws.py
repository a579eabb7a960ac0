"""Check the Yoneda bijection on a random category, then run the shipped law manifest."""
import random

from catlim.generators import random_category, random_presheaf
from catlim.cli import DEFAULT_MANIFEST
from catlim.lawsuite import run_manifest
from catlim.presheaf import yoneda_check

rng = random.Random(0)
cat = random_category(rng, 4, 10)
a = random_presheaf(rng, cat, 3, min_size=1)
for x in cat.objects:
    res = yoneda_check(cat, x, a)
    print(f"Nat(h({x}), A) has {res.count} elements, |A({x})| = {len(a.at(x))}, bijection ok: {res.ok}")

import json
for r in run_manifest(json.loads(DEFAULT_MANIFEST.read_text())):
    print(r.law, r.counts())
