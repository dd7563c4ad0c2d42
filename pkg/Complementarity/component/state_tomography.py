import sys
from concurrent.futures import ThreadPoolExecutor

from Complementarity.constant import MODE_SAMPLED, TOMOGRAPHY_SEED_STREAM
from Complementarity.entity.artifact_entity import StatePreparationArtifact, StateTomographyArtifact
from Complementarity.entity.config_entity import RunConfig, TomographyConfig
from Complementarity.entity.quantum_state import DensityMatrix, reduced_state
from Complementarity.entity.tomography import TomographyRecord, run_state_tomography
from Complementarity.exception import CCRException
from Complementarity.logger import logging
from Complementarity.util.util import save_object, spawn_seeds


class StateTomography:

    def __init__(self, run_config: RunConfig, tomography_config: TomographyConfig,
                 state_preparation_artifact: StatePreparationArtifact, n_jobs: int = 1):
        try:
            logging.info(f"{'=' * 20}State Tomography log started.{'=' * 20} ")
            self.run_config = run_config
            self.tomography_config = tomography_config
            self.state_preparation_artifact = state_preparation_artifact
            self.n_jobs = n_jobs
        except Exception as e:
            raise CCRException(e, sys) from e

    def reconstruct_item(self, prepared: DensityMatrix, seed) -> TomographyRecord:
        return run_state_tomography(prepared, shots=self.run_config.shots, noise=self.run_config.noise,
                                    rng_seed=seed, mitigate_readout=self.tomography_config.readout_mitigation)

    def initiate_state_tomography(self) -> StateTomographyArtifact:
        try:
            if self.run_config.mode != MODE_SAMPLED:
                state_tomography_artifact = StateTomographyArtifact(
                    experiment_states=None, negativity_clipped=None, records_file_path=None,
                    is_performed=False, message="Exact mode, tomography skipped")
                logging.info(f"State tomography artifact: {state_tomography_artifact}")
                return state_tomography_artifact

            prepared_states = self.state_preparation_artifact.prepared_states
            repetitions = self.run_config.repetitions
            # child i * repetitions + k seeds repetition k of item i
            seeds = spawn_seeds(self.run_config.seed, TOMOGRAPHY_SEED_STREAM, len(prepared_states) * repetitions)
            jobs = [(prepared, seeds[i * repetitions + k])
                    for i, prepared in enumerate(prepared_states) for k in range(repetitions)]
            logging.info(f"Running tomography on {len(prepared_states)} state(s), {repetitions} repetition(s) "
                         f"with {self.run_config.shots} shots per setting")
            with ThreadPoolExecutor(max_workers=self.n_jobs) as executor:
                records = list(executor.map(lambda job: self.reconstruct_item(*job), jobs))

            quanton_qubits = self.state_preparation_artifact.quanton_qubits
            per_item = [records[i:i + repetitions] for i in range(0, len(records), repetitions)]
            experiment_states = [[reduced_state(record.physical_estimate, quanton_qubits) for record in item]
                                 for item in per_item]
            negativity_clipped = [[record.negativity_clipped for record in item] for item in per_item]

            records_file_path = self.tomography_config.records_file_path
            save_object(records_file_path, per_item)

            state_tomography_artifact = StateTomographyArtifact(
                experiment_states=experiment_states,
                negativity_clipped=negativity_clipped,
                records_file_path=records_file_path,
                is_performed=True,
                message=f"Reconstructed {len(per_item)} state(s) {repetitions} time(s) each")
            logging.info(f"State tomography artifact: {state_tomography_artifact.message}, "
                         f"records at [{records_file_path}]")
            return state_tomography_artifact
        except Exception as e:
            raise CCRException(e, sys) from e

    def __del__(self):
        logging.info(f"{'>>' * 20}State Tomography log completed.{'<<' * 20} \n\n")
