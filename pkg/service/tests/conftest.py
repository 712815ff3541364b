import json
import random
import socket
import threading
import time

import pytest
import torch
import transformers
from tokenizers import Tokenizer
from tokenizers.models import WordPiece
from tokenizers.normalizers import Lowercase
from tokenizers.pre_tokenizers import Whitespace
from tokenizers.processors import TemplateProcessing
from transformers import BertConfig, BertForSequenceClassification, PreTrainedTokenizerFast

from nli_service.finetune import FinetuneConfig, fine_tune

transformers.logging.set_verbosity_error()
transformers.logging.disable_progress_bar()

WORDS = [
    "alpha", "bravo", "charlie", "delta", "echo", "foxtrot", "golf", "hotel",
    "india", "juliet", "kilo", "lima", "mike", "november", "oscar", "papa",
    "quebec", "romeo", "sierra", "tango",
]
# toy generative scheme: the hypothesis vocabulary signals the relation
AFFIRMING, DENYING = WORDS[:10], WORDS[10:]


def build_tiny_tokenizer() -> PreTrainedTokenizerFast:
    vocab = ["[PAD]", "[UNK]", "[CLS]", "[SEP]", "[MASK]"] + WORDS
    wordpiece = WordPiece(vocab={t: i for i, t in enumerate(vocab)}, unk_token="[UNK]")
    tk = Tokenizer(wordpiece)
    tk.normalizer = Lowercase()
    tk.pre_tokenizer = Whitespace()
    tk.post_processor = TemplateProcessing(
        single="[CLS] $A [SEP]",
        pair="[CLS] $A [SEP] $B:1 [SEP]:1",
        special_tokens=[("[CLS]", 2), ("[SEP]", 3)],
    )
    return PreTrainedTokenizerFast(
        tokenizer_object=tk,
        unk_token="[UNK]",
        pad_token="[PAD]",
        cls_token="[CLS]",
        sep_token="[SEP]",
        mask_token="[MASK]",
        model_input_names=["input_ids", "token_type_ids", "attention_mask"],
    )


@pytest.fixture(scope="session")
def tiny_base_dir(tmp_path_factory) -> str:
    """A randomly initialized 3-class tiny checkpoint (with a neutral class),
    built fully offline."""
    path = tmp_path_factory.mktemp("tiny-base")
    config = BertConfig(
        vocab_size=25,
        hidden_size=32,
        num_hidden_layers=2,
        num_attention_heads=2,
        intermediate_size=64,
        max_position_embeddings=64,
        num_labels=3,
        id2label={0: "contradiction", 1: "neutral", 2: "entailment"},
        label2id={"contradiction": 0, "neutral": 1, "entailment": 2},
    )
    torch.manual_seed(0)
    BertForSequenceClassification(config).save_pretrained(path)
    build_tiny_tokenizer().save_pretrained(path)
    return str(path)


def toy_pair_rows(n: int, seed: int) -> list[dict]:
    """Exported-pair rows in the wire file format."""
    rng = random.Random(seed)
    rows = []
    for i in range(n):
        premise = " ".join(rng.sample(WORDS, 4))
        if i % 2:
            hypothesis = " ".join(rng.sample(AFFIRMING, 2))
            gold = "entail"
        else:
            hypothesis = " ".join(rng.sample(DENYING, 2))
            gold = "non_entail"
        rows.append(
            {
                "instance_id": f"t{i}",
                "premise": premise,
                "hypothesis": hypothesis,
                "label": "toy",
                "mode": "word",
                "gold": gold,
            }
        )
    return rows


def write_pair_file(path, rows) -> str:
    with open(path, "w", encoding="utf-8") as fp:
        for row in rows:
            fp.write(json.dumps(row) + "\n")
    return str(path)


@pytest.fixture(scope="session")
def pretrained_base_dir(tiny_base_dir, tmp_path_factory) -> str:
    """A tiny checkpoint pretrained on the toy entailment distribution,
    standing in for a stock pretrained entailment model."""
    work = tmp_path_factory.mktemp("pretrain")
    pairs_path = write_pair_file(work / "pretrain_pairs.jsonl", toy_pair_rows(600, seed=5))
    out = work / "model"
    fine_tune(
        pairs_path,
        tiny_base_dir,
        out,
        FinetuneConfig(epochs=12, batch_size=32, learning_rate=1e-3, seed=1),
    )
    return str(out)


def free_port() -> int:
    with socket.socket() as sock:
        sock.bind(("127.0.0.1", 0))
        return sock.getsockname()[1]


class LiveServer:
    """A real uvicorn server in a background thread."""

    def __init__(self, app):
        import uvicorn

        self.port = free_port()
        self._server = uvicorn.Server(
            uvicorn.Config(app, host="127.0.0.1", port=self.port, log_level="error")
        )
        self._thread = threading.Thread(target=self._server.run, daemon=True)

    @property
    def url(self) -> str:
        return f"http://127.0.0.1:{self.port}"

    def __enter__(self) -> "LiveServer":
        self._thread.start()
        deadline = time.monotonic() + 15
        while not self._server.started:
            if time.monotonic() > deadline:
                raise RuntimeError("server did not start")
            time.sleep(0.02)
        return self

    def __exit__(self, *exc) -> None:
        self._server.should_exit = True
        self._thread.join(timeout=10)
