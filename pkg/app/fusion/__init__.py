"""Rank computations for sl2 conformal blocks bundles"""