"""The deterministic mock provider: pattern families, seeds, and caching.

Writes one sample of each pattern family into demos/out/ and shows that
repeat calls are byte-identical while the disk cache absorbs them.
"""

import tempfile
from pathlib import Path

from uvforge import GenRequest, MockProvider, cache_key, cached_resolve, encode_png
from uvforge.genprovider import FAMILY_NAMES, request_hash

OUT = Path(__file__).parent / "out"
OUT.mkdir(exist_ok=True)

provider = MockProvider()

# hunt one seed per pattern family for the same prompt
samples = {}
seed = 0
while len(samples) < 4 and seed < 500:
    req = GenRequest("demo pattern", "cartoon", 128, 128, seed)
    family = request_hash(req) % 4
    if family not in samples:
        samples[family] = req
    seed += 1

for family, req in sorted(samples.items()):
    image = provider.generate(req).image
    name = FAMILY_NAMES[family]
    (OUT / f"pattern_{family}_{name}.png").write_bytes(encode_png(image))
    print(f"family {family} ({name:<8}) seed={req.seed:<3} "
          f"hash={request_hash(req):016x}")

# determinism: repeat call, identical bytes
req = samples[0]
a = provider.generate(req).image
b = provider.generate(req).image
print("repeat call byte-identical:", encode_png(a) == encode_png(b))

# cache: second resolve never reaches the provider
class Counting:
    provider_id = "counting"
    calls = 0
    def generate(self, request):
        self.calls += 1
        return provider.generate(request)

with tempfile.TemporaryDirectory() as cache_dir:
    counting = Counting()
    cached_resolve(cache_dir, counting, req)
    cached_resolve(cache_dir, counting, req)
    print(f"provider calls for two resolves of {cache_key(req)[:12]}...: "
          f"{counting.calls} (cache hit on the second)")
