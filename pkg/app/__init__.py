"""Conformal blocks toolkit for sl2 bundles on moduli of pointed rational curves"""