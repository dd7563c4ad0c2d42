import sys
from concurrent.futures import ThreadPoolExecutor

import numpy as np

from Complementarity.constant import (COLUMN_INDEX, COLUMN_NUM_GATES, COLUMN_NUM_QUBITS, COLUMN_W, COLUMN_X,
                                      EXPERIMENT_WERNER_SWEEP, MODE_SAMPLED, PREPARATION_SEED_STREAM)
from Complementarity.entity.artifact_entity import StatePreparationArtifact
from Complementarity.entity.circuit_factory import (apply, circuit_to_json, random_circuit,
                                                    werner_preparation_circuit)
from Complementarity.entity.config_entity import RunConfig, StatePreparationConfig
from Complementarity.entity.noise_model import apply_noisy_circuit
from Complementarity.entity.quantum_state import (WernerParams, num_qubits_for_dimension, pure_density,
                                                  reduced_state, werner_state, zero_state)
from Complementarity.exception import CCRException
from Complementarity.logger import logging
from Complementarity.util.util import spawn_seeds, write_json_lines


class StatePreparation:
    """
    Builds the circuit of every item of a run, the ideal reduced state of the
    quanton and, in sampled mode, the noisy register state handed to tomography.
    """

    def __init__(self, run_config: RunConfig, state_preparation_config: StatePreparationConfig, n_jobs: int = 1):
        try:
            logging.info(f"{'=' * 20}State Preparation log started.{'=' * 20} ")
            self.run_config = run_config
            self.state_preparation_config = state_preparation_config
            self.n_jobs = n_jobs
        except Exception as e:
            raise CCRException(e, sys) from e

    def get_werner_grid(self) -> list:
        values = np.linspace(0.0, 1.0, self.run_config.grid)
        return [WernerParams(w=w, x=x) for x in values for w in values]

    def _initial_state(self, num_qubits: int):
        return pure_density(zero_state(num_qubits))

    def prepare_werner_item(self, index: int, params: WernerParams):
        circuit = werner_preparation_circuit(params)
        theory = werner_state(params)
        prepared = None
        if self.run_config.mode == MODE_SAMPLED:
            prepared = apply_noisy_circuit(circuit, self._initial_state(circuit.num_qubits), self.run_config.noise)
        label = {COLUMN_INDEX: index, COLUMN_X: params.x, COLUMN_W: params.w}
        return label, circuit, theory, prepared

    def prepare_random_item(self, index: int, seed):
        """
        Random circuit on one qubit more than the quanton, applied to |0...0>;
        the highest-index qubit is traced out.
        """
        quanton_qubits = num_qubits_for_dimension(self.run_config.dimension)
        num_qubits = quanton_qubits + 1
        circuit = random_circuit(num_qubits, self.run_config.num_gates, seed)
        global_state = pure_density(apply(circuit, zero_state(num_qubits)))
        theory = reduced_state(global_state, range(quanton_qubits))
        prepared = None
        if self.run_config.mode == MODE_SAMPLED:
            prepared = apply_noisy_circuit(circuit, self._initial_state(num_qubits), self.run_config.noise)
        label = {COLUMN_INDEX: index, COLUMN_NUM_QUBITS: num_qubits, COLUMN_NUM_GATES: self.run_config.num_gates}
        return label, circuit, theory, prepared

    def save_circuits(self, labels: list, circuits: list) -> str:
        try:
            circuits_file_path = self.state_preparation_config.circuits_file_path
            records = [{COLUMN_INDEX: label[COLUMN_INDEX], **circuit_to_json(circuit)}
                       for label, circuit in zip(labels, circuits)]
            write_json_lines(circuits_file_path, records)
            logging.info(f"Saved {len(records)} circuit(s) to [{circuits_file_path}]")
            return circuits_file_path
        except Exception as e:
            raise CCRException(e, sys) from e

    def initiate_state_preparation(self) -> StatePreparationArtifact:
        try:
            if self.run_config.experiment == EXPERIMENT_WERNER_SWEEP:
                jobs = list(enumerate(self.get_werner_grid()))
                prepare = self.prepare_werner_item
                quanton_qubits = [0]
            else:
                seeds = spawn_seeds(self.run_config.seed, PREPARATION_SEED_STREAM, self.run_config.num_states)
                jobs = list(enumerate(seeds))
                prepare = self.prepare_random_item
                quanton_qubits = list(range(num_qubits_for_dimension(self.run_config.dimension)))
            logging.info(f"Preparing {len(jobs)} state(s) for [{self.run_config.experiment}] "
                         f"in [{self.run_config.mode}] mode")

            # executor.map keeps the item order whatever the completion order
            with ThreadPoolExecutor(max_workers=self.n_jobs) as executor:
                items = list(executor.map(lambda job: prepare(*job), jobs))
            labels, circuits, theory_states, prepared_states = (list(column) for column in zip(*items))
            if self.run_config.mode != MODE_SAMPLED:
                prepared_states = None

            circuits_file_path = self.save_circuits(labels, circuits)
            state_preparation_artifact = StatePreparationArtifact(
                experiment=self.run_config.experiment,
                labels=labels,
                circuits=circuits,
                theory_states=theory_states,
                prepared_states=prepared_states,
                quanton_qubits=quanton_qubits,
                circuits_file_path=circuits_file_path,
                is_prepared=True,
                message=f"Prepared {len(labels)} state(s)")
            logging.info(f"State preparation artifact: {state_preparation_artifact.message}, "
                         f"circuits at [{circuits_file_path}]")
            return state_preparation_artifact
        except Exception as e:
            raise CCRException(e, sys) from e

    def __del__(self):
        logging.info(f"{'>>' * 20}State Preparation log completed.{'<<' * 20} \n\n")
