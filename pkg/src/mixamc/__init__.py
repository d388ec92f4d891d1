"""Synthesis, exact-likelihood classification, and evaluation of co-channel modulated signals.

Symbol sequences are plain complex128 numpy arrays of length L; preprocessed
classifier inputs are real float arrays of shape (2, L, 1) with the real row
first. Total mixed-signal power is normalized to 1, so SNR in dB maps to a
complex noise variance of 10**(-snr_db/10) everywhere.
"""

from mixamc.constellations import Constellation, Scheme, constellation, modulate
from mixamc.channel import ChannelParams, MixSpec, add_awgn, apply_channel, mix, preprocess, reconstruct
from mixamc.labelsets import LabelSet, MixedClass, SingleClass, labelset_by_name
from mixamc.dataset import Dataset, gen_test, gen_training
from mixamc.amcd import load, save
from mixamc.alrt import AlrtConfig, Hypothesis, classify, composite_points, evaluate_bound, log_likelihood
from mixamc.evaluate import AccuracyCurve, ConfusionMatrix, confusion, curve, export_csv

__all__ = [
    "AccuracyCurve",
    "AlrtConfig",
    "ChannelParams",
    "ConfusionMatrix",
    "Constellation",
    "Dataset",
    "Hypothesis",
    "LabelSet",
    "MixSpec",
    "MixedClass",
    "Scheme",
    "SingleClass",
    "add_awgn",
    "apply_channel",
    "classify",
    "composite_points",
    "confusion",
    "constellation",
    "curve",
    "evaluate_bound",
    "export_csv",
    "gen_test",
    "gen_training",
    "labelset_by_name",
    "load",
    "log_likelihood",
    "mix",
    "modulate",
    "preprocess",
    "reconstruct",
    "save",
]
