import os
import sys
from typing import Sequence, Union

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt
import numpy as np
import pandas as pd

from Complementarity.constant import (COLUMN_BOUND, COLUMN_D_A, COLUMN_INDEX, COLUMN_W, COLUMN_X, SOURCE_EXPERIMENT,
                                      SOURCE_THEORY, STD_SUFFIX)
from Complementarity.entity.artifact_entity import PlotExportArtifact
from Complementarity.entity.config_entity import PlotExportConfig
from Complementarity.exception import CCRException, MalformedDataset
from Complementarity.logger import logging
from Complementarity.util.util import read_dataframe

SURFACE_MEASURES = ("C_l1", "P_l1", "W_l1")
# summed surfaces are drawn against the bound d_A - 1
SUM_SURFACES = {
    "C_l1_plus_P_l1": ("C_l1", "P_l1"),
    "C_l1_plus_P_l1_plus_W_l1": ("C_l1", "P_l1", "W_l1"),
}
DIMENSION_TREND_STEM = "dimensions"


def _sources(dataset: pd.DataFrame) -> list:
    return [source for source in (SOURCE_THEORY, SOURCE_EXPERIMENT) if f"C_l1_{source}" in dataset.columns]


def add_sum_columns(dataset: pd.DataFrame, sources) -> pd.DataFrame:
    dataset = dataset.copy()
    for name, parts in SUM_SURFACES.items():
        for source in sources:
            dataset[f"{name}_{source}"] = sum(dataset[f"{part}_{source}"] for part in parts)
    return dataset


def write_gnuplot_surface(file_path: str, dataset: pd.DataFrame, column: str):
    """
    ``x w value`` triples in gnuplot grid order: one block per x value, blocks
    separated by a blank line so ``splot ... with pm3d`` reads them as a surface.
    """
    os.makedirs(os.path.dirname(file_path) or ".", exist_ok=True)
    ordered = dataset.sort_values([COLUMN_X, COLUMN_W])
    with open(file_path, "w") as dat_file:
        dat_file.write(f"# {COLUMN_X} {COLUMN_W} {column}\n")
        for _, block in ordered.groupby(COLUMN_X, sort=True):
            for x, w, value in block[[COLUMN_X, COLUMN_W, column]].itertuples(index=False):
                dat_file.write(f"{x:.17g} {w:.17g} {value:.17g}\n")
            dat_file.write("\n")


def write_gnuplot_table(file_path: str, frame: pd.DataFrame):
    os.makedirs(os.path.dirname(file_path) or ".", exist_ok=True)
    with open(file_path, "w") as dat_file:
        dat_file.write("# " + " ".join(frame.columns) + "\n")
        frame.to_csv(dat_file, sep=" ", header=False, index=False, float_format="%.17g", lineterminator="\n")


def dimension_trend(datasets: Sequence[pd.DataFrame]) -> pd.DataFrame:
    """
    Batch means per quanton dimension of C_l1, P_l1, W_l1 and of the two sums,
    one row per d_A in ascending order, with the bound d_A - 1.
    """
    combined = pd.concat(list(datasets), ignore_index=True)
    sources = [source for source in (SOURCE_THEORY, SOURCE_EXPERIMENT)
               if all(f"C_l1_{source}" in dataset.columns for dataset in datasets)]
    combined = add_sum_columns(combined, sources)
    rows = []
    for d_A, group in combined.groupby(COLUMN_D_A, sort=True):
        row = {COLUMN_D_A: int(d_A), COLUMN_BOUND: float(d_A) - 1.0, "num_states": len(group)}
        for source in sources:
            for name in SURFACE_MEASURES + tuple(SUM_SURFACES):
                row[f"{name}_{source}"] = float(group[f"{name}_{source}"].mean())
        rows.append(row)
    return pd.DataFrame(rows)


class PlotExport:
    """
    Companion plotting target: gnuplot surface files plus PNG renderings of a
    Werner sweep, per-state scatter files of a random-state dataset, or the
    trend over d_A of several random-state datasets.
    """

    def __init__(self, plot_export_config: PlotExportConfig, dataset_file_path: Union[str, Sequence[str]]):
        try:
            logging.info(f"{'=' * 20}Plot Export log started.{'=' * 20} ")
            self.plot_export_config = plot_export_config
            if isinstance(dataset_file_path, str):
                dataset_file_path = [dataset_file_path]
            self.dataset_file_paths = list(dataset_file_path)
            if not self.dataset_file_paths:
                raise MalformedDataset("no dataset to plot")
            if len(self.dataset_file_paths) == 1:
                self.stem = os.path.splitext(os.path.basename(self.dataset_file_paths[0]))[0]
            else:
                self.stem = DIMENSION_TREND_STEM
        except Exception as e:
            raise CCRException(e, sys) from e

    def _path(self, name: str) -> str:
        return os.path.join(self.plot_export_config.plot_dir, f"{self.stem}_{name}")

    def export_werner_sweep(self, dataset: pd.DataFrame):
        data_file_paths, image_file_paths = [], []
        sources = _sources(dataset)
        dataset = add_sum_columns(dataset, sources)
        xs = np.sort(dataset[COLUMN_X].unique())
        ws = np.sort(dataset[COLUMN_W].unique())
        grid_x, grid_w = np.meshgrid(xs, ws, indexing="ij")
        for measure in SURFACE_MEASURES + tuple(SUM_SURFACES):
            for source in sources:
                column = f"{measure}_{source}"
                data_file_path = self._path(f"{column}.dat")
                write_gnuplot_surface(data_file_path, dataset, column)
                data_file_paths.append(data_file_path)

            surface = dataset.pivot_table(index=COLUMN_X, columns=COLUMN_W, values=f"{measure}_{SOURCE_THEORY}")
            figure = plt.figure(figsize=(6, 5))
            axes = figure.add_subplot(projection="3d")
            axes.plot_wireframe(grid_x, grid_w, surface.loc[xs, ws].to_numpy(), color="red", linewidth=0.6,
                                label=SOURCE_THEORY)
            if measure in SUM_SURFACES:
                bound = float(dataset[COLUMN_D_A].iloc[0]) - 1.0
                axes.plot_surface(grid_x, grid_w, np.full_like(grid_x, bound), color="grey", alpha=0.25)
            if SOURCE_EXPERIMENT in sources:
                column = f"{measure}_{SOURCE_EXPERIMENT}"
                axes.scatter(dataset[COLUMN_X], dataset[COLUMN_W], dataset[column],
                             s=6, color="black", label=SOURCE_EXPERIMENT)
                if column + STD_SUFFIX in dataset.columns:
                    axes.errorbar(dataset[COLUMN_X].to_numpy(), dataset[COLUMN_W].to_numpy(),
                                  dataset[column].to_numpy(), zerr=dataset[column + STD_SUFFIX].to_numpy(),
                                  fmt="none", ecolor="black", elinewidth=0.5)
            axes.set_xlabel(COLUMN_X)
            axes.set_ylabel(COLUMN_W)
            axes.set_zlabel(measure)
            axes.legend()
            image_file_path = self._path(f"{measure}.png")
            figure.savefig(image_file_path, dpi=120, bbox_inches="tight")
            plt.close(figure)
            image_file_paths.append(image_file_path)
        return data_file_paths, image_file_paths

    def export_random_states(self, dataset: pd.DataFrame):
        sources = _sources(dataset)
        frame = pd.DataFrame({COLUMN_INDEX: dataset[COLUMN_INDEX]})
        for source in sources:
            frame[f"C_l1_plus_P_l1_{source}"] = dataset[f"C_l1_{source}"] + dataset[f"P_l1_{source}"]
            frame[f"W_l1_{source}"] = dataset[f"W_l1_{source}"]
        frame[COLUMN_BOUND] = dataset[COLUMN_BOUND]

        data_file_path = self._path("l1.dat")
        os.makedirs(self.plot_export_config.plot_dir, exist_ok=True)
        write_gnuplot_table(data_file_path, frame)

        figure, axes = plt.subplots(figsize=(7, 4))
        for source, marker in zip(sources, ("o", "x")):
            axes.scatter(frame[COLUMN_INDEX], frame[f"C_l1_plus_P_l1_{source}"], s=10, marker=marker,
                         label=f"C_l1 + P_l1 ({source})")
        axes.plot(frame[COLUMN_INDEX], frame[COLUMN_BOUND], color="red", linewidth=1.0, label="d_A - 1")
        axes.set_xlabel("state")
        axes.legend()
        image_file_path = self._path("l1.png")
        figure.savefig(image_file_path, dpi=120, bbox_inches="tight")
        plt.close(figure)
        return [data_file_path], [image_file_path]

    def export_dimension_trend(self, datasets: Sequence[pd.DataFrame]):
        trend = dimension_trend(datasets)
        sources = [source for source in (SOURCE_THEORY, SOURCE_EXPERIMENT) if f"C_l1_{source}" in trend.columns]
        os.makedirs(self.plot_export_config.plot_dir, exist_ok=True)
        data_file_path = self._path("l1.dat")
        write_gnuplot_table(data_file_path, trend)

        figure, (measure_axes, sum_axes) = plt.subplots(1, 2, figsize=(11, 4))
        for source, linestyle in zip(sources, ("-", "--")):
            for measure in SURFACE_MEASURES:
                measure_axes.plot(trend[COLUMN_D_A], trend[f"{measure}_{source}"], marker="o", linestyle=linestyle,
                                  label=f"{measure} ({source})")
            for name, label in zip(SUM_SURFACES, ("C_l1 + P_l1", "C_l1 + P_l1 + W_l1")):
                sum_axes.plot(trend[COLUMN_D_A], trend[f"{name}_{source}"], marker="o", linestyle=linestyle,
                              label=f"{label} ({source})")
        sum_axes.plot(trend[COLUMN_D_A], trend[COLUMN_BOUND], color="red", linewidth=1.0, label="d_A - 1")
        for axes in (measure_axes, sum_axes):
            axes.set_xlabel(COLUMN_D_A)
            axes.set_xticks(trend[COLUMN_D_A])
            axes.legend(fontsize="small")
        image_file_path = self._path("l1.png")
        figure.savefig(image_file_path, dpi=120, bbox_inches="tight")
        plt.close(figure)
        return [data_file_path], [image_file_path]

    def initiate_plot_export(self) -> PlotExportArtifact:
        try:
            datasets = [read_dataframe(file_path) for file_path in self.dataset_file_paths]
            for file_path, dataset in zip(self.dataset_file_paths, datasets):
                if not _sources(dataset):
                    raise MalformedDataset(f"{file_path} has no C_l1 columns to plot")

            if len(datasets) > 1:
                for file_path, dataset in zip(self.dataset_file_paths, datasets):
                    if COLUMN_BOUND not in dataset.columns:
                        raise MalformedDataset(f"{file_path} is not a random-state dataset")
                data_file_paths, image_file_paths = self.export_dimension_trend(datasets)
            elif {COLUMN_X, COLUMN_W} <= set(datasets[0].columns):
                data_file_paths, image_file_paths = self.export_werner_sweep(datasets[0])
            elif {COLUMN_INDEX, COLUMN_BOUND} <= set(datasets[0].columns):
                data_file_paths, image_file_paths = self.export_random_states(datasets[0])
            else:
                raise MalformedDataset(f"{self.dataset_file_paths[0]} is neither a sweep nor a random-state dataset")

            plot_export_artifact = PlotExportArtifact(data_file_paths=data_file_paths,
                                                      image_file_paths=image_file_paths,
                                                      message=f"Wrote {len(data_file_paths)} data file(s) and "
                                                              f"{len(image_file_paths)} image(s)")
            logging.info(f"Plot export artifact: {plot_export_artifact}")
            return plot_export_artifact
        except Exception as e:
            raise CCRException(e, sys) from e

    def __del__(self):
        logging.info(f"{'>>' * 20}Plot Export log completed.{'<<' * 20} \n\n")
