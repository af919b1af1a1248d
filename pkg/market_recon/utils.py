"""Utility functions for market reconstruction."""
import hashlib
import json
import os

import pandas as pd


def get_hash(d, modulo=2 ** 63):
    """Generate a stable integer hash from JSON-serializable data."""
    json_str = json.dumps(d, sort_keys=True, ensure_ascii=True)
    hash_obj = hashlib.sha256(json_str.encode("utf-8"), usedforsecurity=False)
    return int(hash_obj.hexdigest(), 16) % modulo


def derive_seed(master_seed, *keys):
    """Per-run seed that depends only on the master seed and the run keys."""
    return get_hash([int(master_seed), *keys])


def read_json_file_data(file):
    """Read JSON data from file, return empty dict if file doesn't exist."""
    if os.path.exists(file):
        with open(file, encoding="utf-8") as f:
            data = json.load(f)
    else:
        data = {}
    return data


def write_json_file_data(data, file_name):
    """Write JSON data to file with formatting."""
    _ensure_parent(file_name)
    with open(file_name, "w", encoding="utf-8") as f:
        json.dump(data, f, indent=4, sort_keys=True)
        f.write("\n")


def write_csv_rows(file_name, header, rows):
    """Write a header plus rows; floats keep their full repr."""
    _ensure_parent(file_name)
    frame = pd.DataFrame([list(row) for row in rows], columns=header)
    frame.to_csv(file_name, index=False, lineterminator="\n")


def _ensure_parent(file_name):
    parent = os.path.dirname(file_name)
    os.makedirs(parent if parent else ".", exist_ok=True)
