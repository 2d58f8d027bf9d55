from evalxai.src.harness.experiment_config import ExperimentConfig, load_config
from evalxai.src.harness.experiment_runner import ExperimentRunner, run_experiment
