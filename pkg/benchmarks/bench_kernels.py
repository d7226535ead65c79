"""Time the compiled kernels against the numpy fallback.

    python benchmarks/bench_kernels.py [--size 1024] [--repeat 5]
"""
import argparse
import timeit

import numpy as np

from visus import _fallback

try:
    from visus import _kernels
except ImportError:
    _kernels = None


def cases(img, other):
    n = img.shape[0] * img.shape[1]
    idx = np.sort(np.random.default_rng(1).choice(n, size=n // 8, replace=False)).astype(np.int64)
    sym = (idx % 4).astype(np.uint8)
    shares = [img & m for m in (0xD5, 0xAB, 0xCF, 0xB2, 0xD9, 0xB6, 0xEC)]
    return {
        "carrier_indices": lambda k: k.carrier_indices(img),
        "pattern_symbols": lambda k: k.pattern_symbols(img),
        "sanitize": lambda k: k.sanitize(img),
        "write_symbols": lambda k: k.write_symbols(img, idx, sym),
        "mask_channels": lambda k: k.mask_channels(img, 0xD5),
        "or_stack": lambda k: k.or_stack(shares),
        "channel_stats": lambda k: k.channel_stats(img, other),
        "histogram": lambda k: k.histogram(img),
    }


def main():
    ap = argparse.ArgumentParser(description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter)
    ap.add_argument("--size", type=int, default=1024, help="square image side in pixels")
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args()

    rng = np.random.default_rng(0)
    img = rng.integers(0, 64, size=(args.size, args.size, 3), dtype=np.uint8)
    other = rng.integers(0, 256, size=img.shape, dtype=np.uint8)

    impls = {"numpy": _fallback}
    if _kernels is not None:
        impls["cython"] = _kernels
    else:
        print("compiled kernels not built; timing the fallback only")

    print(f"{args.size}x{args.size} RGB, best of {args.repeat} (ms)")
    print(f"{'kernel':<18}" + "".join(f"{name:>10}" for name in impls) + ("   speedup" if len(impls) > 1 else ""))
    for label, fn in cases(img, other).items():
        times = {name: min(timeit.repeat(lambda: fn(k), number=1, repeat=args.repeat)) * 1e3 for name, k in impls.items()}
        row = f"{label:<18}" + "".join(f"{t:>10.2f}" for t in times.values())
        if len(times) > 1:
            row += f"{times['numpy'] / times['cython']:>9.1f}x"
        print(row)


if __name__ == "__main__":
    main()
