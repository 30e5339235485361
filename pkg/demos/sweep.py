"""
Parameter sweep
===============

The same grid the ``sweep`` subcommand runs, printed as a table: both tail
variants of the general bound next to the two classical bounds.
"""

from hjsemigroup.cli import run, to_csv

config = {
    "mode": "sweep",
    "semigroup": "SymCayley(3)",
    "laws": [[["2,1,3", "1/2"], ["1,2,3", "1/4"], ["2,3,1", "1/4"]]],
    "n": 4,
    "z0": "1,2,3",
    "params": {"n_vec": [1, 2], "t_vec": [["0", "1/2", "1"], ["1"]], "s": ["0", "1"]},
}

code, report = run(config)
print(to_csv(report))
print("exit code", code)
