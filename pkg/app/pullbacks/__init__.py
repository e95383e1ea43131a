"""Hyperelliptic and flag pullback calculus"""