import logging
import os

from Complementarity.config.configuration import Configuration
from Complementarity.constant import EXPERIMENT_RANDOM_STATES, EXPERIMENT_WERNER_SWEEP, SUPPORTED_DIMENSIONS
from Complementarity.pipeline.pipeline import Pipeline


def main():
    try:
        config_path = os.path.join("config", "config.yaml")
        config = Configuration(config_file_path=config_path)
        pipeline = Pipeline(config, config.get_run_config(EXPERIMENT_WERNER_SWEEP))
        pipeline.start()
        pipeline.join()
        for dimension in SUPPORTED_DIMENSIONS:
            config = Configuration(config_file_path=config_path, overrides={"dimension": dimension})
            pipeline = Pipeline(config, config.get_run_config(EXPERIMENT_RANDOM_STATES))
            pipeline.start()
            pipeline.join()
        print(Pipeline.get_experiments_status())
    except Exception as e:
        logging.error(f"{e}")
        print(e)


if __name__ == ("__main__"):
    main()
