"""Regenerate the bundled sample corpora (src/lexcontrast/data/sample_*.vert).

The samples are synthetic: sentence templates around the two node words with
fixed collocate pools per corpus.  Output is deterministic for a given seed.

    python tools/make_samples.py
"""
import random
from pathlib import Path

DATA = Path(__file__).resolve().parents[1] / "src" / "lexcontrast" / "data"

PUNCT = ("。", "PERIODCATEGORY")

# {S} subject noun, {O} object noun, {N} node word
TEMPLATES = {
    "subject_now": [("{S}", "Na"), ("正在", "D"), ("{N}", "{T}"), ("中", "Ng"), PUNCT],
    "start": [("双方", "Nh"), ("开始", "VL"), ("{N}", "{T}"), ("{O}", "Na"), PUNCT],
    "start_subj": [("{S}", "Na"), ("将", "D"), ("开始", "VL"), ("{N}", "{T}"), PUNCT],
    "continue": [("{S}", "Na"), ("将", "D"), ("继续", "VL"), ("{N}", "{T}"), PUNCT],
    "last": [("{S}", "Na"), ("持续", "VL"), ("{N}", "{T}"), ("{O}", "Na"), PUNCT],
    "object": [("{S}", "Na"), ("{N}", "{T}"), ("{O}", "Na"), ("已", "D"), ("完成", "VJ"), PUNCT],
    "so_far": [("{S}", "Na"), ("迄今", "D"), ("已", "D"), ("{N}", "{T}"), ("三", "Neu"), ("次", "Nf"), PUNCT],
    "process": [("{N}", "{T}"), ("过程", "Na"), ("顺利", "VH"), PUNCT],
    "progress": [("{N}", "{T}"), ("进展", "Na"), ("缓慢", "VH"), PUNCT],
    "ba": [("反对", "VE"), ("把", "P"), ("{O}", "Na"), ("{N}", "{T}"), ("，", "COMMACATEGORY"),
           ("是", "SHI"), ("政治", "Na"), ("工具", "Na"), PUNCT],
    "modifier": [("{S}", "Na"), ("举行", "VC"), ("艰难", "VH"), ("的", "DE"), ("{N}", "{T}"), PUNCT],
}

FILLER = [
    [("今天", "Nd"), ("天气", "Na"), ("晴朗", "VH"), PUNCT],
    [("政府", "Na"), ("宣布", "VE"), ("新", "VH"), ("政策", "Na"), PUNCT],
    [("经济", "Na"), ("持续", "VL"), ("增长", "VHC"), PUNCT],
    [("会议", "Na"), ("在", "P"), ("北京", "Nc"), ("举行", "VC"), PUNCT],
    [("记者", "Na"), ("开始", "VL"), ("采访", "VC"), ("代表", "Na"), PUNCT],
    [("人民", "Na"), ("生活", "Na"), ("正在", "D"), ("改善", "VHC"), PUNCT],
]

# per corpus, per node: (tag, template weights, subject pool, object pool)
PLAN = {
    "cna": {
        "谈判": ("VC2",
                {"subject_now": 4, "start": 5, "start_subj": 3, "object": 8, "so_far": 1, "process": 2,
                 "ba": 2, "modifier": 2, "last": 1},
                ["贸易", "首席", "航权", "新回合", "双方", "我方"],
                ["代表团", "对手", "代表", "议题", "我方"]),
        "协商": ("VE2",
                {"subject_now": 3, "start": 4, "start_subj": 3, "continue": 8, "last": 2, "object": 8,
                 "ba": 2, "progress": 1},
                ["人民", "单位", "党政", "双方", "我方", "朝野"],
                ["制度", "版本", "总预算案", "代表", "会报"]),
    },
    "xin": {
        "谈判": ("VC2",
                {"subject_now": 4, "start": 6, "start_subj": 4, "object": 9, "so_far": 1, "process": 4,
                 "progress": 2, "ba": 1, "modifier": 2},
                ["回合", "首席", "地位", "双方", "政党", "领导人"],
                ["进展", "立场", "僵局", "代表", "问题"]),
        "协商": ("VE2",
                {"subject_now": 3, "continue": 3, "object": 6, "ba": 1},
                ["人民", "部门", "单位", "政党", "领导人"],
                ["委员", "对话", "职能", "座谈会", "代表", "问题"]),
    },
}

COUNTS = {"cna": {"谈判": 40, "协商": 48, "filler": 60}, "xin": {"谈判": 56, "协商": 16, "filler": 60}}


def sentence(rng, node, tag, template, subjects, objects):
    fill = {"{S}": rng.choice(subjects), "{O}": rng.choice(objects), "{N}": node}
    return [(fill.get(s, s), tag if p == "{T}" else p) for s, p in template]


def build(name, seed):
    rng = random.Random(seed)
    sents = []
    for node, (tag, weights, subjects, objects) in PLAN[name].items():
        keys = sorted(weights)
        for _ in range(COUNTS[name][node]):
            key = rng.choices(keys, weights=[weights[k] for k in keys])[0]
            sents.append(sentence(rng, node, tag, TEMPLATES[key], subjects, objects))
    for _ in range(COUNTS[name]["filler"]):
        sents.append(list(rng.choice(FILLER)))
    rng.shuffle(sents)
    lines = [f"# sample corpus {name.upper()}: synthetic, generated by tools/make_samples.py"]
    for i in range(0, len(sents), 12):
        lines.append(f"# doc: {name}-{i // 12 + 1:03d}")
        for sent in sents[i:i + 12]:
            lines.extend(f"{s}\t{p}" for s, p in sent)
            lines.append("")
    return "\n".join(lines)


if __name__ == "__main__":
    for seed, name in enumerate(("cna", "xin"), 2024):
        path = DATA / f"sample_{name}.vert"
        path.write_text(build(name, seed), encoding="utf-8")
        print(path)
