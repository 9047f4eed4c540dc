import time
from typing import List, Union

import numpy as np
import pandas as pd


class MeasureTime:
    def __init__(self, print_time=False):
        self.s = None
        self.e = None
        self.print_time = print_time

    @property
    def duration(self) -> float:
        if self.s is None:
            return 0.
        return (self.e if self.e is not None else time.perf_counter()) - self.s

    def __enter__(self):
        self.s = time.perf_counter()
        self.e = None
        return self

    def __exit__(self, exc_type, exc_val, exc_tb):
        self.e = time.perf_counter()
        if self.print_time:
            print(f"duration: {self.e - self.s}\n")


class ExperimentResults:
    def __init__(self, names: Union[List, str, None] = None):
        if isinstance(names, str):
            self.names = [names]
            self._data = {n: [] for n in self.names}
        elif isinstance(names, List):
            self.names = list(names)
            self._data = {n: [] for n in names}
        elif names is None:
            self.names = []
            self._data = {}
        else:
            raise ValueError(f"Unrecognized names: {names}")

    def _init_name_in_data(self, name):
        if name not in self._data:
            self._data[name] = []

    def get_names(self):
        return self.names

    def append(self, name, value):
        if name not in self.names:
            self.names.append(name)
            self._init_name_in_data(name)
        if isinstance(value, list):
            self._data[name] += value
        elif isinstance(value, (bool, float, int, str, np.integer, np.floating, np.bool_)) or value is None:
            self._data[name].append(value)
        elif isinstance(value, np.ndarray):
            self._data[name] += list(value)
        else:
            raise ValueError(f"Can not interpret value: {value}")

    def append_row(self, row: dict):
        for name, value in row.items():
            self.append(name, value)

    def check_values(self):
        lengths = {k: len(self._data[k]) for k in self._data}
        if len(set(lengths.values())) > 1:
            raise ValueError(f"Not all elements in self._data have same length: {lengths}")

    def get_df(self):
        self.check_values()
        return pd.DataFrame(self._data, columns=self.names)
