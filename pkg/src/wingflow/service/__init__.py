"""Checkpoint persistence and the HTTP inference service."""

from .app import create_app, decode_f32, default_geometry, encode_f32, serve
from .checkpoint import CheckpointMeta, load_checkpoint, save_checkpoint

__all__ = [
    "save_checkpoint",
    "load_checkpoint",
    "CheckpointMeta",
    "create_app",
    "serve",
    "encode_f32",
    "decode_f32",
    "default_geometry",
]
