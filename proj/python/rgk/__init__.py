"""Python front end to the rgk C++ core."""

import json

from . import _core
from ._core import (
    InvalidInput,
    Unsupported,
    aut_order,
    cokernel,
    det,
    gamma_r,
    p_sylow_iid,
    p_sylow_symmetric,
    pi_pr,
    same_orbit,
    snf_diagonal,
    theory_constants,
)

__version__ = _core.__version__


def inspect(adjacency):
    """Classification record of one adjacency matrix, as a dict.

    Big integers arrive as decimal strings and are converted to int.
    """
    rec = json.loads(_core.inspect_json(adjacency))
    for key in ("snf_diagonal", "k0_invariant_factors", "unit_class"):
        if rec.get(key) is not None:
            rec[key] = [int(x) for x in rec[key]]
    rec["det_I_minus_A"] = int(rec["det_I_minus_A"])
    return rec


def simulate(model, n=0, samples=1000, seed=0, primes=(2, 3, 5, 7), max_exp=3, workers=0, **params):
    """Run the sampling harness and return the summary dict.

    Model parameters go in ``params`` under the names used by the summary
    config (q as "a/b", r, m1, m2, mbar).
    """
    model_obj = {"kind": model, "n": n}
    model_obj.update(params)
    config = {
        "model": model_obj,
        "samples": samples,
        "master_seed": seed,
        "primes": list(primes),
        "max_exp": max_exp,
        "workers": workers,
    }
    return json.loads(_core.simulate_json(json.dumps(config)))
