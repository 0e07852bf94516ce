"""Numeric feature-ID to feature-key mapping, published as a resource.

IDs 1-19 are the content features (rating-related ones only exist for the
yelp profile), 20-27 the optional passthrough columns, 28-81 the user
incremental average/maximum pairs over features 1-27, 82-85 the scalar user
features, 86-139 the item incremental pairs, and 140-177 the per-item-and-
rating incremental pairs over features 1-19.  Word-grams (ID 17) have no
scalar form, so their incremental slots are marked unavailable.
"""

from __future__ import annotations

import json
from importlib import resources

CONTENT_IDS: dict[int, list[str]] = {
    1: ["adjective_ratio"],
    2: ["adverb_ratio"],
    3: ["char_count"],
    4: ["difficult_word_count"],
    5: ["emotion_anger", "emotion_fear", "emotion_happiness", "emotion_sadness", "emotion_surprise"],
    6: ["flesch"],
    7: ["interjection_ratio"],
    8: ["eflaw"],
    9: ["noun_ratio"],
    10: ["polarity"],
    11: ["pronoun_ratio"],
    12: ["punctuation_ratio"],
    13: ["reading_time"],
    14: ["url_count"],
    15: ["verb_ratio"],
    16: ["word_count"],
    17: ["gram:*"],
    18: ["rating_polarity_deviation"],
    19: ["rating"],
    20: ["extra_bot"],
    21: ["extra_deleted"],
    22: ["extra_new"],
    23: ["extra_revert"],
    24: ["extra_size_diff"],
    25: ["extra_edit_quality"],
    26: ["extra_item_quality"],
    27: ["extra_article_quality"],
}


def build_feature_id_map() -> dict[str, dict]:
    out: dict[str, dict] = {}

    def put(fid: int, keys: list[str], description: str) -> None:
        out[str(fid)] = {"keys": keys, "description": description}

    for fid in range(1, 28):
        put(fid, CONTENT_IDS[fid], "content feature")

    def incremental(start: int, prefix: str, upto: int, what: str) -> None:
        fid = start
        for base_id in range(1, upto + 1):
            keys = CONTENT_IDS[base_id]
            for stat in ("avg", "max"):
                if base_id == 17:
                    put(fid, [], f"{what} {stat}: unavailable (word-grams have no scalar form)")
                else:
                    put(fid, [f"{prefix}_{stat}_{k}" for k in keys], f"{what} incremental {stat}")
                fid += 1

    incremental(28, "user", 27, "per-user")
    put(82, ["user_post_count"], "cumulative posts per user")
    put(83, ["user_spam_tendency"], "share of labeled posts that were spam")
    put(84, ["user_antiquity_weeks"], "weeks since first post")
    put(85, ["user_posting_frequency"], "posts per week of antiquity")
    incremental(86, "item", 27, "per-item")
    incremental(140, "item_rating", 19, "per-item-and-rating")
    return out


def feature_id_map() -> dict[str, dict]:
    """The bundled resource copy (kept consistent with the builder by a test)."""
    text = resources.files("spamdrift.resources").joinpath("feature_ids.json").read_text("utf-8")
    return json.loads(text)


if __name__ == "__main__":   # regenerate the bundled resource
    import pathlib

    path = pathlib.Path(__file__).parent / "resources" / "feature_ids.json"
    path.write_text(json.dumps(build_feature_id_map(), indent=2, sort_keys=True) + "\n", "utf-8")
    print(f"wrote {path}")
