import json
import os
import sys

import dill
import numpy as np
import pandas as pd
import yaml

from Complementarity.constant import CSV_FLOAT_FORMAT
from Complementarity.exception import CCRException


def _make_parent_dir(file_path: str):
    dir_path = os.path.dirname(file_path)
    if dir_path:
        os.makedirs(dir_path, exist_ok=True)


def write_yaml_file(file_path: str, data: dict = None):
    """
    Create yaml file
    file_path: str
    data: dict
    """
    try:
        _make_parent_dir(file_path)
        with open(file_path, "w") as yaml_file:
            if data is not None:
                yaml.safe_dump(data, yaml_file, sort_keys=False)
    except Exception as e:
        raise CCRException(e, sys) from e


def read_yaml_file(file_path: str) -> dict:
    """
    Reads a YAML (or JSON) file and returns the contents as a dictionary.
    file_path: str
    """
    try:
        with open(file_path, 'rb') as yaml_file:
            return yaml.safe_load(yaml_file)
    except Exception as e:
        raise CCRException(e, sys) from e


def save_json_file(file_path: str, data):
    try:
        _make_parent_dir(file_path)
        with open(file_path, "w") as json_file:
            json.dump(data, json_file, indent=2)
    except Exception as e:
        raise CCRException(e, sys) from e


def load_json_file(file_path: str):
    try:
        with open(file_path) as json_file:
            return json.load(json_file)
    except Exception as e:
        raise CCRException(e, sys) from e


def write_json_lines(file_path: str, records: list):
    try:
        _make_parent_dir(file_path)
        with open(file_path, "w") as jsonl_file:
            for record in records:
                jsonl_file.write(json.dumps(record, sort_keys=False) + "\n")
    except Exception as e:
        raise CCRException(e, sys) from e


def read_json_lines(file_path: str) -> list:
    try:
        with open(file_path) as jsonl_file:
            return [json.loads(line) for line in jsonl_file if line.strip()]
    except Exception as e:
        raise CCRException(e, sys) from e


def save_object(file_path: str, obj):
    """
    file_path: str
    obj: Any sort of object
    """
    try:
        _make_parent_dir(file_path)
        with open(file_path, "wb") as file_obj:
            dill.dump(obj, file_obj)
    except Exception as e:
        raise CCRException(e, sys) from e


def load_object(file_path: str):
    """
    file_path: str
    """
    try:
        with open(file_path, "rb") as file_obj:
            return dill.load(file_obj)
    except Exception as e:
        raise CCRException(e, sys) from e


def write_dataframe(file_path: str, dataframe: pd.DataFrame):
    """
    Writes a dataset as CSV with a fixed float format so identical runs give identical bytes.
    """
    try:
        _make_parent_dir(file_path)
        dataframe.to_csv(file_path, index=False, float_format=CSV_FLOAT_FORMAT, lineterminator="\n")
    except Exception as e:
        raise CCRException(e, sys) from e


def read_dataframe(file_path: str) -> pd.DataFrame:
    try:
        return pd.read_csv(file_path)
    except Exception as e:
        raise CCRException(e, sys) from e


def spawn_seeds(seed: int, stream: int, count: int) -> list:
    """
    ``count`` independent child seeds drawn from stream ``stream`` of the run seed,
    so every stage and every item owns a reproducible random stream.
    """
    return np.random.SeedSequence(seed).spawn(stream + 1)[stream].spawn(count)
