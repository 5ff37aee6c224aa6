"""Exact arithmetic toolkit for the equation binom(n,k) = binom(m,l) + d.

Submodules:
  intmath      integer square roots, valuations, residues, factoring
  polynomials  exact univariate/multivariate polynomial arithmetic
  binomials    generalized binomial coefficients and inverses
  corpus       embedded solution corpus and verifiers
  sieve        congruence obstructions and the unsolvability scan
  equalindex   complete solver for equal lower index, and collision search
  curves       curve models, certified coordinate maps, bounded searches
  groebner     Buchberger Groebner-basis kernel over the rationals
  polyidentity polynomial-solution machinery for binom(f1,k)+binom(x,2)=binom(f2,2)
  reproduce    end-to-end reproduction scenarios against the curated data
  cli          command-line interface
"""

__version__ = "0.1.0"
