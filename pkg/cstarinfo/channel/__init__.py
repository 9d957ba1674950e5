"""Discrete memoryless channels as unital positive maps, their classification, capacity and random coding"""

from ._channel import Channel, bsc, bec, identity, useless, apply_channel, push_state, is_unital, maps_positive
from ._joint import JointState, JointOutput, pair_algebra, channel_output, joint, output_state
from ._classify import LosslessChannel, Classification, numerical_rank, omega_c_independent, classify
from ._metrics import InfoMetrics, CapacityResult, info_metrics, capacity
from ._coding import CodingTrial, CodingExperimentResult, CodeAndDecoder, codebook_size, induced_channel, decode
from ._coding import build_code_and_decoder, deviation_and_error, coding_trials, summarize_trials, check_coding
from ._coding import coding_experiment

__all__ = [
    "Channel",
    "bsc",
    "bec",
    "identity",
    "useless",
    "apply_channel",
    "push_state",
    "is_unital",
    "maps_positive",
    "JointState",
    "JointOutput",
    "pair_algebra",
    "channel_output",
    "joint",
    "output_state",
    "LosslessChannel",
    "Classification",
    "numerical_rank",
    "omega_c_independent",
    "classify",
    "InfoMetrics",
    "CapacityResult",
    "info_metrics",
    "capacity",
    "CodingTrial",
    "CodingExperimentResult",
    "CodeAndDecoder",
    "codebook_size",
    "induced_channel",
    "decode",
    "build_code_and_decoder",
    "deviation_and_error",
    "coding_trials",
    "summarize_trials",
    "check_coding",
    "coding_experiment",
    ]
