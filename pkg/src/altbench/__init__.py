"""Desk-scale workbench for alternating-machine games and their reductions.

Subpackages: exact tower arithmetic (arith), deterministic multi-tape
machines (dtm), alternating machines (atm), configuration and path codecs
(codec), the hop-checking verifier (verifier), quantified tape games and
machine reductions (prenex), multi-tiling systems and the tiling
reduction (tiling), and the command-line front end (cli).
"""

__version__ = "0.1.0"
