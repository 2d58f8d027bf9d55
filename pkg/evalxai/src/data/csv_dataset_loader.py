import logging
from typing import BinaryIO, Iterable, List, Optional, TextIO, Union

import numpy
import pandas  # type: ignore

from evalxai.interface.data.i_dataset_loader import IDatasetLoader
from evalxai.src.data.dataset import Dataset
from evalxai.src.data.feature_spec import FeatureSpec
from evalxai.src.errors import DatasetError

logger = logging.getLogger(__name__)


def _same_label(cell: str, positive_label: str) -> bool:
    if cell == positive_label:
        return True
    try:
        return float(cell) == float(positive_label)
    except ValueError:
        return False


class CsvDatasetLoader(IDatasetLoader):
    """
    reads UTF-8, comma separated files with a header row and numeric feature cells

    the label column is removed from the features and mapped to 1 when it matches positive_label,
    0 otherwise.
    """

    def __init__(
        self,
        label_column: str = "label",
        positive_label: Union[str, int, float] = "1",
        non_negative: Optional[Iterable[str]] = None,
        infer_non_negative: bool = False,
    ):
        self._label_column = label_column
        self._positive_label = str(positive_label)
        self._non_negative = set(non_negative) if non_negative is not None else set()
        self._infer_non_negative = infer_non_negative

    def load(self, source: BinaryIO) -> Dataset:
        try:
            table = pandas.read_csv(
                source,
                header=None,
                dtype=str,
                keep_default_na=False,
                encoding="utf-8",
                skipinitialspace=True,
            )
        except pandas.errors.EmptyDataError as exception:
            raise DatasetError("empty dataset: no header row") from exception
        except (pandas.errors.ParserError, UnicodeDecodeError) as exception:
            raise DatasetError(f"unreadable csv: {exception}") from exception
        table = table.fillna("")

        header: List[str] = [str(name).strip() for name in table.iloc[0].tolist()]
        duplicates = sorted({name for name in header if header.count(name) > 1})
        if duplicates:
            raise DatasetError(f"duplicate header names {duplicates}")
        if self._label_column not in header:
            raise DatasetError(f"missing label column {self._label_column}")
        body = table.iloc[1:].reset_index(drop=True)
        if len(body) == 0:
            raise DatasetError("empty dataset")
        body.columns = header

        feature_names = [name for name in header if name != self._label_column]
        unknown = sorted(self._non_negative.difference(feature_names))
        if unknown:
            raise DatasetError(f"non negative features not in header {unknown}")

        rows = numpy.empty((len(body), len(feature_names)), dtype=numpy.float64)
        for column_index, name in enumerate(feature_names):
            cells = body[name].str.strip()
            values = pandas.to_numeric(cells, errors="coerce").to_numpy(dtype=numpy.float64)
            bad = ~numpy.isfinite(values)
            if numpy.any(bad):
                row_index = int(numpy.argmax(bad))
                raise DatasetError(
                    f"non numeric cell {cells.iloc[row_index]!r} at row {row_index + 1}, column {name}"
                )
            rows[:, column_index] = values

        labels = numpy.array(
            [1 if _same_label(cell.strip(), self._positive_label) else 0 for cell in body[self._label_column]],
            dtype=numpy.int64,
        )
        features = [
            FeatureSpec(
                name,
                non_negative=name in self._non_negative
                or (self._infer_non_negative and bool(numpy.min(rows[:, index]) >= 0)),
            )
            for index, name in enumerate(feature_names)
        ]
        dataset = Dataset(features, rows, labels)
        logger.info("loaded %s", dataset)
        return dataset

    def load_path(self, path: str) -> Dataset:
        try:
            with open(path, "rb") as source:
                return self.load(source)
        except OSError as exception:
            raise DatasetError(f"can not read dataset {path}: {exception}") from exception


def load_csv(source: BinaryIO, label_column: str, positive_label: Union[str, int, float]) -> Dataset:
    return CsvDatasetLoader(label_column=label_column, positive_label=positive_label).load(source)


def write_csv(
    dataset: Dataset,
    target: Union[str, TextIO],
    label_column: str = "label",
    positive_label: str = "1",
    negative_label: str = "0",
) -> None:
    if dataset.has_feature(label_column):
        raise ValueError(f"label column {label_column} clashes with a feature name")
    table = pandas.DataFrame(dataset.rows, columns=dataset.feature_names)
    table[label_column] = [positive_label if label == 1 else negative_label for label in dataset.labels]
    table.to_csv(target, index=False, lineterminator="\n")
