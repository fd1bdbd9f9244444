"""Trains the small byte-level BPE tokenizers bundled under data/tokenizers."""
import argparse
import json
from pathlib import Path

from tokenizers import Regex, Tokenizer, decoders, models, pre_tokenizers, trainers

LLAMA3_SPLIT = (
    r"(?i:'s|'t|'re|'ve|'m|'ll|'d)|[^\r\n\p{L}\p{N}]?\p{L}+|\p{N}{1,3}| ?[^\s\p{L}\p{N}]+[\r\n]*"
    r"|\s*[\r\n]+|\s+(?!\S)|\s+"
)
GPT2_SPLIT = r"'s|'t|'re|'ve|'m|'ll|'d| ?\p{L}+| ?\p{N}+| ?[^\s\p{L}\p{N}]+|\s+(?!\S)|\s+"


def corpus_texts(path):
    with open(path, encoding="utf-8") as f:
        for line in f:
            rec = json.loads(line)
            yield rec["source"]
            yield from rec.get("patches", [])


def train(corpus, pattern, vocab_size):
    tok = Tokenizer(models.BPE(ignore_merges=pattern is LLAMA3_SPLIT))
    tok.pre_tokenizer = pre_tokenizers.Sequence([
        pre_tokenizers.Split(Regex(pattern), behavior="isolated"),
        pre_tokenizers.ByteLevel(add_prefix_space=False, use_regex=False),
    ])
    tok.decoder = decoders.ByteLevel()
    trainer = trainers.BpeTrainer(
        vocab_size=vocab_size,
        initial_alphabet=pre_tokenizers.ByteLevel.alphabet(),
        show_progress=False,
    )
    tok.train_from_iterator(corpus_texts(corpus), trainer)
    return tok


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--corpus", default="data/corpus/desk.jsonl")
    ap.add_argument("--out", default="data/tokenizers")
    args = ap.parse_args()
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    train(args.corpus, LLAMA3_SPLIT, 1200).save(str(out / "desk-llama3.json"))
    train(args.corpus, GPT2_SPLIT, 800).save(str(out / "desk-gpt2.json"))


if __name__ == "__main__":
    main()
