#!/usr/bin/env python3
"""Regenerate the offline fixture store dump under fixtures/.

Emits an app catalog plus recorded transport envelopes (Steam review API JSON
and Meta Quest review-page HTML) keyed exactly how ReplayTransport expects
them. Content is fully hard-coded so repeated runs are byte-identical.
"""

from __future__ import annotations

import json
import shutil
import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parent.parent / "src"))

from personamine.ingest.scraper import store_page_url
from personamine.ingest.steam import reviews_page_url
from personamine.ingest.transport import fixture_key

ROOT = Path(__file__).resolve().parent.parent
FIXTURES = ROOT / "fixtures"
REPLAY = FIXTURES / "replay"

FETCHED_AT = "2024-06-01T00:00:00Z"
BASE_TS = 1716206400  # 2024-05-20T12:00:00Z


APPS = [
    # (store, app_id, title, tags, rank)
    ("steam", "990001", "Blade Arena", ["action", "shooter", "vr"], 1),
    ("metaquest", "hollow-manor", "Hollow Manor", ["horror", "adventure"], 2),
    ("steam", "990002", "Orbit Social Hub", ["social", "multiplayer"], 3),
    ("metaquest", "puzzle-dimensions", "Puzzle Dimensions", ["puzzle", "casual"], 4),
    ("steam", "990003", "Flight Deck Simulator", ["simulation", "flying"], 5),
    ("metaquest", "powerplay-sports", "PowerPlay Sports", ["sports", "fitness"], 6),
    ("steam", "990004", "Dread Depths", ["horror", "survival"], 7),
    ("metaquest", "rhythm-rush", "Rhythm Rush", ["rhythm", "action"], 8),
    ("steam", "990005", "Tabletop Puzzler", ["puzzle", "board"], 9),
    ("metaquest", "social-summit", "Social Summit", ["social", "chat"], 10),
    ("steam", "990006", "Proving Grounds GP", ["sports", "racing"], 11),
    ("metaquest", "farmstead-sim", "Farmstead Sim", ["simulation", "relaxing"], 12),
]


# Kept-eligible review bodies (>=20 words, English, one or more lexicon hits).
VESTIBULAR = [
    "I really wanted to love this one but the smooth turning gave me motion sickness within "
    "about five minutes and I had to lie down for an hour afterwards.",
    "The artificial locomotion makes me so dizzy that I can only play in short bursts, "
    "please add a proper teleport option and a stronger comfort vignette for people like me.",
    "Got extremely nauseous during the vehicle sections even with all of the comfort settings "
    "turned on, and my partner had the same motoin sickness problem on her very first session.",
    "After twenty minutes the camera shake left me queasy for the rest of the evening, which "
    "is a shame because everything else about the experience is honestly wonderful and polished.",
    "Sim sickness hits me hard here, the vertigo on the tower section was brutal and there is "
    "no option to fade the edges of the view while you move around the map.",
]

HEARING = [
    "As a deaf player I depend on subtitles, and this title simply does not have any, so I "
    "missed the whole story and most of the tutorial instructions along the way.",
    "I am hard of hearing and the voice acting has no captions at all, every important cue is "
    "audio only which makes several of the later puzzles impossible for me to finish.",
    "My hearing loss means I cant hear the direction of footsteps, a visual indicator for "
    "sounds would make the matches feel fair instead of frustrating for players like me.",
    "There are subtitels but they are tiny and they disappear far too fast, my hearing aid "
    "helps a little yet I still lose half of the dialogue in crowded scenes.",
]

VISION = [
    "The text too small problem is real, menus are unreadable for my low vision even when I "
    "lean in close, and there is no way to enlarge the interface at all.",
    "I am colorblind and the red and green team markers look identical to me, a simple shape "
    "or pattern option would have saved me from shooting my own teammates constantly.",
    "Serious eye strain after any long session, everything is slightly blurry text at distance "
    "and a sharpening or contrast slider would help those of us with weaker eyesight a lot.",
]

MOTOR = [
    "I play seated in a wheelchair and the game keeps asking me to physically crouch to the "
    "floor, a seated mode with height calibration would make this actually playable for me.",
    "My tremor makes the tiny pinch gestures nearly impossible, please let us remap grip "
    "strength requirements or add a toggle hold because my hands give out after a few rounds.",
    "Playing one handed after my stroke is mostly fine until the climbing parts, which demand "
    "two controllers at once, an accessibility remap like other titles offer would fix it.",
    "I have arthritis and holding the trigger for the entire match hurts, an auto grab or a "
    "toggle option is all I need to keep enjoying this with my friends on weekends.",
]

COGNITIVE = [
    "The overwhelming menus are a nightmare for my adhd, there are six nested tabs just to "
    "change one comfort setting and I constantly forget where anything actually lives in there.",
    "As an autistic player the sensory overload in the hub world is intense, a calm mode that "
    "dims the crowd noise and flashing signs would make this so much more welcoming.",
    "The tutorial moves way too fast and my dyslexia makes the timed text boxes useless, let "
    "me advance instructions at my own pace instead of hiding them after five seconds.",
]

SPEECH = [
    "The game forces voice commands for squad orders and my stutter means the recognition "
    "fails constantly, a radial menu fallback would let me actually coordinate with my team.",
    "I am nonverbal and there is no text chat at all in the lobbies, everyone assumes my "
    "silence is rudeness, please give us a quick phrase wheel or a keyboard option.",
    "Speech recognition never understands my speech impediment so the magic casting system "
    "locks me out of half the content, a button combo alternative would solve it completely.",
]

NO_SIGNAL = [
    "Fantastic art direction and a soundtrack that I still hum at work, the weekly updates "
    "keep adding maps and the developers clearly listen to what the community keeps asking for.",
    "The matchmaking took a while on launch week but after the patch I find full lobbies in "
    "under a minute and the progression system feels generous without ever selling power.",
    "My whole family takes turns with this on weekends, the tracking is accurate, the loading "
    "times are short, and the tutorial does a good job of teaching the basic movement.",
]

TOO_SHORT = [
    "fun but made me dizzy",
    "no subtitles, refunded",
    "great with friends",
]

NON_ENGLISH = [
    "这个 游戏 很 好玩 但是 我 玩 了 十 分钟 之后 感觉 非常 头晕 只能 停下来 休息 很久 才 缓过来 不推荐 给 容易 晕 的 玩家",
    "Эта игра очень красивая но у меня сильно кружится голова после десяти минут игры и мне приходится делать длинные перерывы каждый раз",
]

ADVERT = [
    "Best deals on headset accessories right here, use code QUEST20 for a promo code discount "
    "at my store, link in profile, trusted by thousands of happy virtual reality customers.",
]

ABUSIVE = [
    "You morons clearly never tested this garbage before shipping it, twenty minutes of my "
    "life wasted on a broken tutorial and a store page full of lies about the content.",
]


# Per-app review plans: (body_pool, index) tuples keep ids stable.
PLAN = {
    "990001": [  # Blade Arena (action): vestibular heavy + others
        VESTIBULAR[0], VESTIBULAR[1], VESTIBULAR[2], HEARING[2], MOTOR[1],
        NO_SIGNAL[0], TOO_SHORT[0], ADVERT[0],
    ],
    "hollow-manor": [  # horror
        VESTIBULAR[3], HEARING[0], COGNITIVE[1], VISION[2], NO_SIGNAL[1], TOO_SHORT[1],
    ],
    "990002": [  # social
        SPEECH[0], SPEECH[1], HEARING[1], COGNITIVE[0], NO_SIGNAL[2], NON_ENGLISH[0],
    ],
    "puzzle-dimensions": [  # puzzle
        VISION[0], MOTOR[1], COGNITIVE[2], VESTIBULAR[4], TOO_SHORT[2],
    ],
    "990003": [  # simulation
        VESTIBULAR[4], VESTIBULAR[2], MOTOR[2], VISION[1], NON_ENGLISH[1],
    ],
    "powerplay-sports": [  # sports
        MOTOR[0], MOTOR[3], VESTIBULAR[1], HEARING[3], ABUSIVE[0],
    ],
    "990004": [  # horror (steam)
        VESTIBULAR[0], HEARING[0], VISION[2], COGNITIVE[1], NO_SIGNAL[0],
    ],
    "rhythm-rush": [  # action (metaquest)
        VESTIBULAR[1], MOTOR[1], HEARING[2], SPEECH[2], TOO_SHORT[0],
    ],
    "990005": [  # puzzle (steam)
        VISION[0], COGNITIVE[2], VESTIBULAR[3], NO_SIGNAL[1],
    ],
    "social-summit": [  # social (metaquest)
        SPEECH[1], HEARING[1], COGNITIVE[0], NO_SIGNAL[2], ADVERT[0],
    ],
    "990006": [  # sports (steam)
        MOTOR[3], VESTIBULAR[2], HEARING[3], VISION[1], ABUSIVE[0],
    ],
    "farmstead-sim": [  # simulation (metaquest)
        VESTIBULAR[4], MOTOR[0], COGNITIVE[1], VISION[0], NO_SIGNAL[0],
    ],
}

# Steam apps split across two pages to exercise pagination + cross-page dedup.
TWO_PAGE_APPS = {"990001"}


def write_envelope(url: str, body: str) -> None:
    REPLAY.mkdir(parents=True, exist_ok=True)
    envelope = {"url": url, "status": 200, "fetched_at": FETCHED_AT, "body": body}
    (REPLAY / f"{fixture_key(url)}.json").write_text(
        json.dumps(envelope, ensure_ascii=False, indent=2) + "\n", encoding="utf-8"
    )
    with open(REPLAY / "manifest.txt", "a", encoding="utf-8") as fh:
        fh.write(f"{fixture_key(url)} {url}\n")


def steam_review_item(app_id: str, i: int, body: str) -> dict:
    return {
        "recommendationid": f"{app_id}{i:03d}",
        "author": {"steamid": f"7656{app_id}{i:04d}", "num_reviews": 12},
        "language": "english",
        "review": body,
        "timestamp_created": BASE_TS - i * 3600,
        "timestamp_updated": BASE_TS - i * 3600,
        "voted_up": i % 3 != 0,
        "votes_up": i,
        "weighted_vote_score": "0.5",
    }


def write_steam_fixture(app_id: str, bodies: list[str]) -> None:
    items = [steam_review_item(app_id, i, b) for i, b in enumerate(bodies)]
    if app_id in TWO_PAGE_APPS and len(items) > 3:
        # page 2 repeats the last item of page 1 to exercise dedup
        page1, page2 = items[:4], items[3:]
        cursor2 = f"cursor-{app_id}-2"
        payload1 = {
            "success": 1,
            "query_summary": {"num_reviews": len(page1)},
            "reviews": page1,
            "cursor": cursor2,
        }
        payload2 = {
            "success": 1,
            "query_summary": {"num_reviews": len(page2)},
            "reviews": page2,
        }
        write_envelope(reviews_page_url(app_id, "*"), json.dumps(payload1, ensure_ascii=False))
        write_envelope(reviews_page_url(app_id, cursor2), json.dumps(payload2, ensure_ascii=False))
    else:
        payload = {
            "success": 1,
            "query_summary": {"num_reviews": len(items)},
            "reviews": items,
        }
        write_envelope(reviews_page_url(app_id, "*"), json.dumps(payload, ensure_ascii=False))


def metaquest_block(app_id: str, i: int, body: str, with_rating: bool = True) -> str:
    ts = BASE_TS - i * 3600
    from datetime import datetime, timezone

    posted = datetime.fromtimestamp(ts, tz=timezone.utc).strftime("%Y-%m-%dT%H:%M:%SZ")
    rating_html = (
        f'<span class="review-rating" data-value="{(i % 5) + 1}">stars</span>'
        if with_rating
        else ""
    )
    return (
        f'<div class="review-card" data-review-id="mq-{app_id}-r{i:03d}">'
        f"{rating_html}"
        f'<time class="review-date" datetime="{posted}">{posted}</time>'
        f'<p class="review-body">{body}</p>'
        f"</div>"
    )


def write_metaquest_fixture(app_id: str, title: str, bodies: list[str]) -> None:
    blocks = []
    for i, body in enumerate(bodies):
        # one block per page ships without a rating element
        blocks.append(metaquest_block(app_id, i, body, with_rating=(i != 1)))
    html = (
        "<!doctype html><html><head><title>"
        + title
        + ' reviews</title></head><body><main><h1 class="app-title">'
        + title
        + '</h1><div class="reviews-list">'
        + "".join(blocks)
        + "</div></main></body></html>"
    )
    write_envelope(store_page_url(app_id), html)


def main() -> None:
    if REPLAY.exists():
        shutil.rmtree(REPLAY)
    FIXTURES.mkdir(parents=True, exist_ok=True)

    catalog = [
        {
            "store": store,
            "app_id": app_id,
            "title": title,
            "official_description": f"{title} is a virtual reality experience.",
            "raw_tags": tags,
            "popularity_rank": rank,
        }
        for store, app_id, title, tags, rank in APPS
    ]
    (FIXTURES / "apps.json").write_text(
        json.dumps(catalog, ensure_ascii=False, indent=2) + "\n", encoding="utf-8"
    )

    for store, app_id, title, _tags, _rank in APPS:
        bodies = PLAN[app_id]
        if store == "steam":
            write_steam_fixture(app_id, bodies)
        else:
            write_metaquest_fixture(app_id, title, bodies)

    print(f"wrote {len(APPS)} apps and replay envelopes to {FIXTURES}")


if __name__ == "__main__":
    main()
