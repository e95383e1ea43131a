"""Exact linear algebra over the symmetric boundary basis"""