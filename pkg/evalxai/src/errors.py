class DatasetError(ValueError):
    """raised when a dataset can not be loaded or does not support the requested operation"""


class ExperimentConfigError(ValueError):
    """raised when an experiment configuration or command line is invalid"""
