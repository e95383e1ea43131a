#!/usr/bin/env python3
"""Run the reproduction suite of numeric claims about sl2 conformal blocks divisors."""

import argparse
import os
import sys
import time

# Add parent directory to path for imports
sys.path.append(os.path.dirname(os.path.dirname(os.path.abspath(__file__))))

try:
    from app.config import config
    from app.fusion.cache import fusion_cache
    from app.cli.claims import run_claims
except ImportError as e:
    print(f"❌ Import error: {e}")
    print("Run: pip install -r requirements.txt")
    sys.exit(1)


def main() -> int:
    parser = argparse.ArgumentParser(description="Reproduce every numeric claim and report PASS/FAIL")
    parser.add_argument('--max-n', type=int, default=config.max_n,
                        help=f'Largest n for the per-n claim groups (default: {config.max_n})')
    parser.add_argument('--cache', default=config.cache_file,
                        help='JSON file to reuse the fusion memo table across runs')
    args = parser.parse_args()

    if args.cache:
        loaded = fusion_cache.load(args.cache)
        print(f"📁 Loaded {loaded} cached ranks from {args.cache}")

    start = time.time()
    ok, checker = run_claims(args.max_n)
    print(f"\n⏱️  Finished in {time.time() - start:.1f}s")
    if checker.notes:
        print(f"📝 {len(checker.notes)} notes recorded above")

    if args.cache:
        fusion_cache.save(args.cache)
        print(f"💾 Saved {len(fusion_cache)} ranks to {args.cache}")
    return 0 if ok else 1


if __name__ == "__main__":
    sys.exit(main())
