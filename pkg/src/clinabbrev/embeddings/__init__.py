from .kernel import BACKEND
from .sgns import SgnsGradient, TrainConfig, sgns_gradient, sgns_loss, train_sgns
from .vectors import (
    EmbeddingFormatError,
    EmbeddingMatrix,
    cosine,
    embed_phrase,
    embed_word,
    load_embeddings,
    parse_embeddings,
    save_embeddings,
)
from .vocab import Vocab, build_vocab

__all__ = [
    "BACKEND",
    "EmbeddingFormatError",
    "EmbeddingMatrix",
    "SgnsGradient",
    "TrainConfig",
    "Vocab",
    "build_vocab",
    "cosine",
    "embed_phrase",
    "embed_word",
    "load_embeddings",
    "parse_embeddings",
    "save_embeddings",
    "sgns_gradient",
    "sgns_loss",
    "train_sgns",
]
