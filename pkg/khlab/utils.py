import pickle
from typing import Any

import numpy as np


def pickle_save(to_save: Any, path: str):
    with open(path, "wb") as fp:
        status = pickle.dump(to_save, fp, protocol=pickle.HIGHEST_PROTOCOL)
    return status


def pickle_load(path: str):
    with open(path, "rb") as fp:
        obj = pickle.load(fp)
    return obj


def json_repr_handler(obj: Any, simple: bool = False) -> Any:
    """! Recursively converts objects into a json representation"""
    attr = "__simplejsonrepr__" if simple else "__jsonrepr__"

    # Recursive: catch end nodes
    if obj is None:
        return None
    if isinstance(obj, (bool, int, float, str)):
        return obj
    if isinstance(obj, np.integer):
        return int(obj)
    if isinstance(obj, np.bool_):
        return bool(obj)
    if hasattr(obj, attr):
        return obj.__simplejsonrepr__() if simple else obj.__jsonrepr__()
    if simple and hasattr(obj, "__jsonrepr__"):
        return obj.__jsonrepr__()

    # Recursive calls
    if isinstance(obj, np.ndarray):
        return [json_repr_handler(x, simple) for x in obj.tolist()]
    if isinstance(obj, dict):
        return {json_repr_handler(k, simple): json_repr_handler(v, simple) for k, v in obj.items()}
    if isinstance(obj, (set, frozenset)):
        return json_repr_handler(sorted(obj), simple)
    if isinstance(obj, (list, tuple)):
        return [json_repr_handler(x, simple) for x in obj]

    raise TypeError(f"Object of type {type(obj)} is not serializable. Create a {attr} method.")


def laurent_to_string(coefficients: dict[int, int], variable: str = "q") -> str:
    """! Format a Laurent polynomial {exponent: coefficient} with descending exponents, e.g. `q + q^-1`"""
    terms = [(e, c) for e, c in sorted(coefficients.items(), reverse=True) if c != 0]
    if not terms:
        return "0"
    out = ""
    for idx, (e, c) in enumerate(terms):
        sign = "-" if c < 0 else "+"
        mag = abs(c)
        if e == 0:
            body = f"{mag}"
        else:
            power = variable if e == 1 else f"{variable}^{e}"
            body = power if mag == 1 else f"{mag}*{power}"
        if idx == 0:
            out = body if sign == "+" else f"-{body}"
        else:
            out += f" {sign} {body}"
    return out


def bits_of(vertex: int, n: int) -> tuple[int, ...]:
    """! Cube vertex integer to its bit tuple (v_1, ..., v_n), bit 0 being crossing 1"""
    return tuple((vertex >> i) & 1 for i in range(n))


def popcount(x: int) -> int:
    return bin(x).count("1")
