#!/usr/bin/env python3
"""Build the bundled synonym lexicon from hand-curated synonym groups.

Each group lists interchangeable words; every word keys the rest of its group.
Verb and noun groups are expanded with regular inflections, so the committed
lexicon covers common surface forms without a lexical-database dependency.

Usage: python scripts/build_lexicon.py [output.json]
"""

from __future__ import annotations

import json
import sys
from pathlib import Path

# (part-of-speech, words). v: verbs get -s/-ed/-ing forms. n: nouns get plural.
# adj/adv: kept as written. Groups use only regular morphology.
GROUPS: list[tuple[str, list[str]]] = [
    ("adj", ["happy", "glad", "cheerful", "joyful"]),
    ("adj", ["sad", "unhappy", "gloomy", "sorrowful"]),
    ("adj", ["big", "large", "huge", "enormous"]),
    ("adj", ["small", "little", "tiny", "miniature"]),
    ("adj", ["fast", "quick", "rapid", "speedy"]),
    ("adj", ["slow", "sluggish", "unhurried"]),
    ("adj", ["smart", "clever", "intelligent", "bright"]),
    ("adj", ["dumb", "foolish", "silly", "mindless"]),
    ("adj", ["pretty", "beautiful", "lovely", "gorgeous"]),
    ("adj", ["ugly", "hideous", "unsightly"]),
    ("adj", ["angry", "furious", "irate", "enraged"]),
    ("adj", ["calm", "peaceful", "serene", "tranquil"]),
    ("adj", ["strong", "powerful", "sturdy", "mighty"]),
    ("adj", ["weak", "feeble", "frail", "flimsy"]),
    ("adj", ["rich", "wealthy", "affluent"]),
    ("adj", ["poor", "broke", "destitute"]),
    ("adj", ["easy", "simple", "effortless"]),
    ("adj", ["hard", "difficult", "tough", "demanding"]),
    ("adj", ["new", "fresh", "recent", "modern"]),
    ("adj", ["old", "ancient", "aged", "antique"]),
    ("adj", ["good", "fine", "decent", "solid"]),
    ("adj", ["bad", "awful", "terrible", "dreadful"]),
    ("adj", ["nice", "pleasant", "agreeable", "delightful"]),
    ("adj", ["mean", "cruel", "unkind", "nasty"]),
    ("adj", ["funny", "hilarious", "amusing", "comical"]),
    ("adj", ["boring", "dull", "tedious", "tiresome"]),
    ("adj", ["important", "crucial", "vital", "essential"]),
    ("adj", ["useless", "pointless", "futile"]),
    ("adj", ["strange", "odd", "weird", "peculiar"]),
    ("adj", ["normal", "ordinary", "typical", "usual"]),
    ("adj", ["clean", "spotless", "tidy", "immaculate"]),
    ("adj", ["dirty", "filthy", "grimy", "soiled"]),
    ("adj", ["brave", "courageous", "fearless", "bold"]),
    ("adj", ["scared", "afraid", "frightened", "terrified"]),
    ("adj", ["tired", "exhausted", "weary", "drained"]),
    ("adj", ["busy", "occupied", "swamped"]),
    ("adj", ["quiet", "silent", "hushed"]),
    ("adj", ["loud", "noisy", "deafening"]),
    ("adj", ["hot", "scorching", "sweltering"]),
    ("adj", ["cold", "chilly", "freezing", "frigid"]),
    ("adj", ["wet", "damp", "soaked", "drenched"]),
    ("adj", ["dry", "arid", "parched"]),
    ("adj", ["bright", "radiant", "brilliant", "luminous"]),
    ("adj", ["dark", "dim", "murky", "shadowy"]),
    ("adj", ["full", "packed", "crowded", "stuffed"]),
    ("adj", ["empty", "vacant", "bare", "hollow"]),
    ("adj", ["true", "correct", "accurate", "right"]),
    ("adj", ["false", "wrong", "incorrect", "mistaken"]),
    ("adj", ["kind", "gentle", "considerate", "caring"]),
    ("adj", ["rude", "impolite", "disrespectful", "insolent"]),
    ("adj", ["great", "wonderful", "fantastic", "superb"]),
    ("adj", ["horrible", "appalling", "atrocious", "abysmal"]),
    ("adj", ["sick", "ill", "unwell", "ailing"]),
    ("adj", ["healthy", "fit", "well", "robust"]),
    ("adj", ["crazy", "insane", "wild", "absurd"]),
    ("adj", ["serious", "grave", "earnest", "solemn"]),
    ("adj", ["safe", "secure", "protected"]),
    ("adj", ["dangerous", "risky", "hazardous", "perilous"]),
    ("adj", ["cheap", "inexpensive", "affordable"]),
    ("adj", ["expensive", "costly", "pricey"]),
    ("adj", ["wonderful", "marvelous", "splendid"]),
    ("adj", ["annoying", "irritating", "bothersome", "vexing"]),
    ("adj", ["honest", "truthful", "sincere", "candid"]),
    ("adj", ["dishonest", "deceitful", "untruthful"]),
    ("adj", ["proud", "pleased", "satisfied"]),
    ("adj", ["ashamed", "embarrassed", "humiliated"]),
    ("adj", ["lucky", "fortunate", "blessed"]),
    ("adj", ["unlucky", "unfortunate", "hapless"]),
    ("adj", ["famous", "renowned", "celebrated", "notable"]),
    ("adj", ["unknown", "obscure", "anonymous"]),
    ("adj", ["worthless", "valueless", "useless"]),
    ("adj", ["vile", "loathsome", "repulsive", "odious"]),
    ("adj", ["disgusting", "revolting", "gross", "nauseating"]),
    ("adj", ["stupid", "idiotic", "brainless", "witless"]),
    ("adj", ["hateful", "spiteful", "malicious", "venomous"]),
    ("adj", ["friendly", "amiable", "cordial", "sociable"]),
    ("adj", ["hostile", "antagonistic", "unfriendly"]),
    ("adj", ["fair", "just", "equitable", "impartial"]),
    ("adj", ["unfair", "unjust", "biased"]),
    ("adj", ["real", "genuine", "authentic", "actual"]),
    ("adj", ["fake", "phony", "counterfeit", "bogus"]),
    ("adj", ["ready", "prepared", "set"]),
    ("adj", ["whole", "entire", "complete", "total"]),
    ("adj", ["sure", "certain", "confident", "positive"]),
    ("adv", ["really", "truly", "genuinely", "honestly"]),
    ("adv", ["quickly", "rapidly", "swiftly", "speedily"]),
    ("adv", ["slowly", "gradually", "leisurely"]),
    ("adv", ["always", "constantly", "perpetually", "forever"]),
    ("adv", ["never", "nowise"]),
    ("adv", ["often", "frequently", "regularly", "repeatedly"]),
    ("adv", ["rarely", "seldom", "infrequently"]),
    ("adv", ["maybe", "perhaps", "possibly"]),
    ("adv", ["definitely", "certainly", "surely", "absolutely"]),
    ("adv", ["totally", "completely", "entirely", "utterly"]),
    ("adv", ["nearly", "almost", "practically", "virtually"]),
    ("adv", ["exactly", "precisely"]),
    ("adv", ["suddenly", "abruptly", "unexpectedly"]),
    ("adv", ["eventually", "finally", "ultimately"]),
    ("adv", ["everywhere", "anywhere"]),
    ("adv", ["today", "nowadays"]),
    ("adv", ["basically", "essentially", "fundamentally"]),
    ("adv", ["actually", "genuinely", "literally"]),
    ("adv", ["probably", "likely", "presumably"]),
    ("adv", ["together", "jointly", "collectively"]),
    ("v", ["like", "enjoy", "fancy"]),
    ("v", ["love", "adore", "cherish", "treasure"]),
    ("v", ["hate", "despise", "detest", "loathe"]),
    ("v", ["want", "desire", "crave"]),
    ("v", ["need", "require"]),
    ("v", ["look", "glance", "gaze", "stare"]),
    ("v", ["watch", "observe", "view"]),
    ("v", ["talk", "chat", "converse"]),
    ("v", ["say", "state", "declare", "utter"]),
    ("v", ["shout", "yell", "scream", "holler"]),
    ("v", ["whisper", "murmur", "mutter"]),
    ("v", ["walk", "stroll", "wander", "amble"]),
    ("v", ["run", "sprint", "dash", "jog"]),
    ("v", ["jump", "leap", "hop", "bound"]),
    ("v", ["start", "begin", "commence", "initiate"]),
    ("v", ["stop", "halt", "cease", "end"]),
    ("v", ["finish", "complete", "conclude"]),
    ("v", ["help", "assist", "aid", "support"]),
    ("v", ["hurt", "harm", "injure", "wound"]),
    ("v", ["make", "create", "craft", "produce"]),
    ("v", ["destroy", "demolish", "wreck", "ruin"]),
    ("v", ["fix", "repair", "mend", "restore"]),
    ("v", ["break", "shatter", "smash", "crack"]),
    ("v", ["buy", "purchase", "acquire"]),
    ("v", ["sell", "vend", "peddle"]),
    ("v", ["give", "grant", "donate", "provide"]),
    ("v", ["take", "grab", "seize", "snatch"]),
    ("v", ["keep", "retain", "preserve"]),
    ("v", ["throw", "toss", "hurl", "fling"]),
    ("v", ["push", "shove", "thrust"]),
    ("v", ["pull", "drag", "tug", "yank"]),
    ("v", ["open", "unlock", "unseal"]),
    ("v", ["close", "shut", "seal"]),
    ("v", ["show", "display", "reveal", "exhibit"]),
    ("v", ["hide", "conceal", "mask"]),
    ("v", ["find", "discover", "locate", "uncover"]),
    ("v", ["lose", "misplace", "forfeit"]),
    ("v", ["ask", "inquire", "request"]),
    ("v", ["answer", "reply", "respond"]),
    ("v", ["think", "ponder", "reflect", "contemplate"]),
    ("v", ["know", "understand", "comprehend", "grasp"]),
    ("v", ["learn", "study", "absorb"]),
    ("v", ["teach", "instruct", "educate", "train"]),
    ("v", ["remember", "recall", "recollect"]),
    ("v", ["forget", "disregard", "overlook"]),
    ("v", ["believe", "trust", "accept"]),
    ("v", ["doubt", "question", "distrust"]),
    ("v", ["hope", "wish", "aspire"]),
    ("v", ["fear", "dread"]),
    ("v", ["laugh", "giggle", "chuckle", "snicker"]),
    ("v", ["cry", "weep", "sob", "wail"]),
    ("v", ["smile", "grin", "beam"]),
    ("v", ["frown", "scowl", "glare"]),
    ("v", ["eat", "consume", "devour", "munch"]),
    ("v", ["drink", "sip", "gulp", "swallow"]),
    ("v", ["cook", "prepare", "bake"]),
    ("v", ["clean", "scrub", "wash", "wipe"]),
    ("v", ["work", "labor", "toil"]),
    ("v", ["play", "frolic", "romp"]),
    ("v", ["rest", "relax", "unwind", "lounge"]),
    ("v", ["sleep", "doze", "slumber", "snooze"]),
    ("v", ["move", "shift", "relocate", "transfer"]),
    ("v", ["stay", "remain", "linger"]),
    ("v", ["leave", "depart", "exit"]),
    ("v", ["arrive", "appear", "reach"]),
    ("v", ["travel", "journey", "roam", "voyage"]),
    ("v", ["visit", "tour", "frequent"]),
    ("v", ["live", "reside", "dwell", "inhabit"]),
    ("v", ["die", "perish", "expire"]),
    ("v", ["grow", "expand", "develop", "flourish"]),
    ("v", ["shrink", "contract", "dwindle", "diminish"]),
    ("v", ["change", "alter", "modify", "transform"]),
    ("v", ["share", "divide", "distribute", "split"]),
    ("v", ["join", "unite", "connect", "merge"]),
    ("v", ["separate", "detach", "divide"]),
    ("v", ["win", "triumph", "prevail"]),
    ("v", ["fail", "flop", "falter"]),
    ("v", ["try", "attempt", "endeavor"]),
    ("v", ["succeed", "thrive", "prosper"]),
    ("v", ["fight", "battle", "brawl", "clash"]),
    ("v", ["argue", "quarrel", "bicker", "squabble"]),
    ("v", ["agree", "concur", "consent"]),
    ("v", ["refuse", "decline", "reject"]),
    ("v", ["insult", "offend", "demean", "belittle"]),
    ("v", ["praise", "compliment", "commend", "applaud"]),
    ("v", ["blame", "accuse", "fault"]),
    ("v", ["forgive", "pardon", "excuse"]),
    ("v", ["attack", "assault", "ambush"]),
    ("v", ["defend", "protect", "guard", "shield"]),
    ("v", ["avoid", "evade", "dodge", "shun"]),
    ("v", ["follow", "pursue", "trail", "track"]),
    ("v", ["lead", "guide", "direct", "steer"]),
    ("v", ["call", "phone", "summon"]),
    ("v", ["write", "compose", "draft", "pen"]),
    ("v", ["read", "peruse", "scan", "skim"]),
    ("v", ["listen", "heed", "attend"]),
    ("v", ["hear", "perceive", "detect"]),
    ("v", ["feel", "sense", "experience"]),
    ("v", ["touch", "contact", "stroke"]),
    ("v", ["smell", "sniff", "whiff"]),
    ("v", ["taste", "sample", "savor"]),
    ("v", ["wait", "pause", "delay", "stall"]),
    ("v", ["hurry", "rush", "hasten", "scramble"]),
    ("v", ["carry", "haul", "lug", "transport"]),
    ("v", ["drop", "release", "discard", "dump"]),
    ("v", ["lift", "raise", "hoist", "elevate"]),
    ("v", ["lower", "descend", "sink"]),
    ("v", ["turn", "rotate", "spin", "twist"]),
    ("v", ["bend", "curve", "flex"]),
    ("v", ["stretch", "extend", "lengthen"]),
    ("v", ["squeeze", "compress", "crush", "press"]),
    ("v", ["cut", "slice", "chop", "carve"]),
    ("v", ["tear", "rip", "shred"]),
    ("v", ["build", "construct", "assemble", "erect"]),
    ("v", ["dig", "excavate", "burrow"]),
    ("v", ["plant", "sow", "cultivate"]),
    ("v", ["harvest", "gather", "collect", "reap"]),
    ("v", ["count", "tally", "enumerate"]),
    ("v", ["measure", "gauge", "assess"]),
    ("v", ["weigh", "balance", "evaluate"]),
    ("v", ["compare", "contrast", "match"]),
    ("v", ["choose", "select", "pick"]),
    ("v", ["decide", "determine", "resolve"]),
    ("v", ["plan", "arrange", "organize", "schedule"]),
    ("v", ["guess", "estimate", "suppose", "presume"]),
    ("v", ["prove", "demonstrate", "verify", "confirm"]),
    ("v", ["deny", "dispute", "contradict"]),
    ("v", ["warn", "caution", "alert"]),
    ("v", ["promise", "pledge", "vow", "swear"]),
    ("v", ["lie", "fib", "deceive"]),
    ("v", ["cheat", "swindle", "defraud", "trick"]),
    ("v", ["steal", "pilfer", "swipe", "filch"]),
    ("v", ["borrow", "rent", "lease"]),
    ("v", ["lend", "loan", "advance"]),
    ("v", ["pay", "compensate", "reimburse"]),
    ("v", ["owe", "bear"]),
    ("v", ["save", "rescue", "salvage"]),
    ("v", ["waste", "squander", "fritter"]),
    ("v", ["spend", "expend", "disburse"]),
    ("v", ["earn", "gain", "obtain"]),
    ("v", ["enjoy", "relish", "savour"]),
    ("v", ["suffer", "endure", "tolerate"]),
    ("v", ["complain", "grumble", "whine", "gripe"]),
    ("v", ["celebrate", "rejoice", "revel"]),
    ("v", ["mourn", "grieve", "lament"]),
    ("v", ["worry", "fret", "agonize"]),
    ("v", ["annoy", "irritate", "bother", "pester"]),
    ("v", ["please", "delight", "gratify"]),
    ("v", ["surprise", "astonish", "amaze", "astound"]),
    ("v", ["confuse", "bewilder", "baffle", "perplex"]),
    ("v", ["explain", "clarify", "describe"]),
    ("v", ["mention", "note", "remark"]),
    ("v", ["discuss", "debate", "deliberate"]),
    ("v", ["suggest", "propose", "recommend"]),
    ("v", ["demand", "insist", "command"]),
    ("v", ["beg", "plead", "implore"]),
    ("v", ["thank", "appreciate", "acknowledge"]),
    ("v", ["greet", "welcome", "salute"]),
    ("v", ["invite", "beckon", "solicit"]),
    ("v", ["meet", "encounter", "confront"]),
    ("v", ["miss", "skip", "omit"]),
    ("v", ["catch", "capture", "trap", "snare"]),
    ("v", ["escape", "flee", "bolt"]),
    ("v", ["chase", "hunt", "stalk"]),
    ("v", ["hit", "strike", "punch", "whack"]),
    ("v", ["kick", "boot", "punt"]),
    ("v", ["post", "publish", "upload"]),
    ("v", ["comment", "respond", "react"]),
    ("v", ["block", "ban", "mute"]),
    ("v", ["report", "flag", "notify"]),
    ("v", ["scroll", "browse", "surf"]),
    ("n", ["person", "individual", "human"]),
    ("n", ["crowd", "mob", "throng", "horde"]),
    ("n", ["group", "bunch", "cluster", "gathering"]),
    ("n", ["friend", "pal", "buddy", "companion"]),
    ("n", ["enemy", "foe", "adversary", "opponent"]),
    ("n", ["home", "house", "residence", "dwelling"]),
    ("n", ["job", "occupation", "profession", "career"]),
    ("n", ["money", "cash", "currency"]),
    ("n", ["car", "automobile", "vehicle"]),
    ("n", ["road", "street", "avenue", "boulevard"]),
    ("n", ["city", "town", "municipality"]),
    ("n", ["country", "nation", "state"]),
    ("n", ["world", "globe", "planet"]),
    ("n", ["idea", "notion", "concept", "thought"]),
    ("n", ["problem", "issue", "trouble", "difficulty"]),
    ("n", ["answer", "solution", "remedy"]),
    ("n", ["question", "query", "inquiry"]),
    ("n", ["story", "tale", "narrative", "account"]),
    ("n", ["movie", "film", "picture"]),
    ("n", ["song", "tune", "melody"]),
    ("n", ["book", "volume", "tome"]),
    ("n", ["paper", "document", "article"]),
    ("n", ["picture", "image", "photo"]),
    ("n", ["word", "term", "expression"]),
    ("n", ["sentence", "phrase", "statement"]),
    ("n", ["language", "tongue", "speech"]),
    ("n", ["voice", "sound", "tone"]),
    ("n", ["noise", "racket", "din", "clamor"]),
    ("n", ["food", "meal", "dish", "cuisine"]),
    ("n", ["drink", "beverage", "refreshment"]),
    ("n", ["water", "liquid", "fluid"]),
    ("n", ["fire", "flame", "blaze"]),
    ("n", ["light", "glow", "gleam"]),
    ("n", ["shadow", "shade", "silhouette"]),
    ("n", ["day", "daytime"]),
    ("n", ["night", "nighttime", "evening"]),
    ("n", ["morning", "dawn", "sunrise"]),
    ("n", ["week", "fortnight"]),
    ("n", ["year", "annum"]),
    ("n", ["time", "moment", "instant", "period"]),
    ("n", ["place", "location", "spot", "site"]),
    ("n", ["area", "region", "zone", "district"]),
    ("n", ["way", "path", "route", "course"]),
    ("n", ["door", "entrance", "gateway"]),
    ("n", ["window", "pane", "opening"]),
    ("n", ["wall", "barrier", "partition"]),
    ("n", ["floor", "ground", "surface"]),
    ("n", ["roof", "ceiling", "canopy"]),
    ("n", ["table", "desk", "counter"]),
    ("n", ["chair", "seat", "bench"]),
    ("n", ["bed", "cot", "bunk"]),
    ("n", ["box", "container", "crate", "carton"]),
    ("n", ["bag", "sack", "pouch"]),
    ("n", ["tool", "instrument", "implement", "device"]),
    ("n", ["machine", "apparatus", "contraption"]),
    ("n", ["computer", "laptop", "workstation"]),
    ("n", ["phone", "telephone", "mobile", "handset"]),
    ("n", ["message", "note", "memo"]),
    ("n", ["letter", "missive", "dispatch"]),
    ("n", ["news", "tidings", "headlines"]),
    ("n", ["fact", "truth", "reality"]),
    ("n", ["opinion", "view", "belief", "stance"]),
    ("n", ["feeling", "emotion", "sentiment"]),
    ("n", ["fear", "terror", "fright", "panic"]),
    ("n", ["joy", "delight", "happiness", "bliss"]),
    ("n", ["anger", "rage", "fury", "wrath"]),
    ("n", ["sorrow", "grief", "sadness", "misery"]),
    ("n", ["hope", "optimism", "expectation"]),
    ("n", ["dream", "fantasy", "vision"]),
    ("n", ["plan", "scheme", "strategy", "blueprint"]),
    ("n", ["goal", "aim", "objective", "target"]),
    ("n", ["result", "outcome", "consequence"]),
    ("n", ["reason", "cause", "motive", "rationale"]),
    ("n", ["chance", "opportunity", "possibility"]),
    ("n", ["luck", "fortune", "fate"]),
    ("n", ["power", "strength", "force", "might"]),
    ("n", ["energy", "vigor", "vitality"]),
    ("n", ["health", "wellness", "fitness"]),
    ("n", ["sickness", "illness", "disease", "ailment"]),
    ("n", ["pain", "ache", "agony", "torment"]),
    ("n", ["injury", "wound", "trauma"]),
    ("n", ["doctor", "physician", "medic"]),
    ("n", ["teacher", "instructor", "educator", "tutor"]),
    ("n", ["student", "pupil", "learner"]),
    ("n", ["school", "academy", "institute"]),
    ("n", ["class", "course", "lesson"]),
    ("n", ["test", "exam", "quiz", "assessment"]),
    ("n", ["game", "match", "contest", "competition"]),
    ("n", ["team", "squad", "crew", "roster"]),
    ("n", ["player", "competitor", "participant"]),
    ("n", ["winner", "victor", "champion"]),
    ("n", ["loser", "underdog", "failure"]),
    ("n", ["leader", "chief", "boss", "head"]),
    ("n", ["worker", "employee", "laborer", "staffer"]),
    ("n", ["company", "firm", "business", "enterprise"]),
    ("n", ["store", "shop", "market", "outlet"]),
    ("n", ["price", "cost", "charge", "fee"]),
    ("n", ["gift", "present", "offering"]),
    ("n", ["party", "celebration", "festivity", "bash"]),
    ("n", ["trip", "journey", "voyage", "excursion"]),
    ("n", ["holiday", "vacation", "getaway"]),
    ("n", ["weather", "climate", "conditions"]),
    ("n", ["rain", "drizzle", "downpour", "shower"]),
    ("n", ["storm", "tempest", "squall"]),
    ("n", ["wind", "breeze", "gust", "gale"]),
    ("n", ["snow", "frost", "sleet"]),
    ("n", ["sun", "sunshine", "sunlight"]),
    ("n", ["tree", "sapling", "timber"]),
    ("n", ["flower", "blossom", "bloom"]),
    ("n", ["grass", "lawn", "turf"]),
    ("n", ["animal", "creature", "beast"]),
    ("n", ["dog", "hound", "pup", "canine"]),
    ("n", ["cat", "kitten", "feline"]),
    ("n", ["bird", "fowl", "avian"]),
    ("n", ["fish", "trout", "salmon"]),
    ("n", ["child", "kid", "youngster", "tot"]),
    ("n", ["baby", "infant", "newborn"]),
    ("n", ["family", "household", "kin", "clan"]),
    ("n", ["parent", "guardian", "caretaker"]),
    ("n", ["mother", "mom", "mama"]),
    ("n", ["father", "dad", "papa"]),
    ("n", ["street", "lane", "alley"]),
    ("n", ["park", "garden", "green"]),
    ("n", ["river", "stream", "creek", "brook"]),
    ("n", ["mountain", "peak", "summit", "ridge"]),
    ("n", ["ocean", "sea", "deep"]),
    ("n", ["beach", "shore", "coast", "seaside"]),
    ("n", ["island", "isle", "atoll"]),
    ("n", ["forest", "woods", "woodland", "grove"]),
    ("n", ["field", "meadow", "pasture"]),
    ("n", ["farm", "ranch", "homestead"]),
    ("n", ["war", "conflict", "combat", "warfare"]),
    ("n", ["peace", "harmony", "accord"]),
    ("n", ["law", "rule", "regulation", "statute"]),
    ("n", ["crime", "offense", "violation", "misdeed"]),
    ("n", ["police", "cops", "authorities"]),
    ("n", ["prison", "jail", "penitentiary"]),
    ("n", ["judge", "magistrate", "justice"]),
    ("n", ["court", "tribunal", "courtroom"]),
    ("n", ["government", "administration", "regime"]),
    ("n", ["election", "vote", "ballot", "poll"]),
    ("n", ["speech", "address", "oration", "talk"]),
    ("n", ["meeting", "conference", "assembly", "session"]),
    ("n", ["argument", "dispute", "disagreement", "row"]),
    ("n", ["insult", "slur", "taunt", "jibe"]),
    ("n", ["threat", "menace", "intimidation"]),
    ("n", ["victim", "target", "prey"]),
    ("n", ["hero", "savior", "champion"]),
    ("n", ["villain", "scoundrel", "miscreant"]),
    ("n", ["stranger", "outsider", "newcomer"]),
    ("n", ["neighbor", "local", "resident"]),
    ("n", ["community", "society", "public"]),
    ("n", ["culture", "tradition", "custom"]),
    ("n", ["history", "past", "heritage"]),
    ("n", ["future", "tomorrow", "prospect"]),
    ("n", ["beginning", "start", "onset", "outset"]),
    ("n", ["end", "finish", "conclusion", "close"]),
    ("n", ["middle", "center", "midpoint", "core"]),
    ("n", ["top", "summit", "peak", "apex"]),
    ("n", ["bottom", "base", "foot"]),
    ("n", ["side", "edge", "flank", "margin"]),
    ("n", ["part", "piece", "portion", "segment"]),
    ("n", ["thing", "object", "item", "article"]),
    ("n", ["stuff", "material", "matter"]),
    ("n", ["kind", "type", "sort", "variety"]),
    ("n", ["amount", "quantity", "sum"]),
    ("n", ["number", "figure", "digit"]),
    ("n", ["size", "dimension", "magnitude"]),
    ("n", ["shape", "form", "contour", "outline"]),
    ("n", ["color", "hue", "shade", "tint"]),
]


def inflect(part: str, word: str) -> list[str]:
    forms = [word]
    if part == "v":
        if word.endswith("e") and not word.endswith("ee"):
            forms += [word + "s", word[:-1] + "ed", word[:-1] + "ing"]
        elif word.endswith("y") and word[-2] not in "aeiou":
            forms += [word[:-1] + "ies", word[:-1] + "ied", word + "ing"]
        elif word.endswith(("s", "x", "z", "ch", "sh")):
            forms += [word + "es", word + "ed", word + "ing"]
        else:
            forms += [word + "s", word + "ed", word + "ing"]
    elif part == "n":
        if word.endswith("y") and word[-2] not in "aeiou":
            forms.append(word[:-1] + "ies")
        elif word.endswith(("s", "x", "z", "ch", "sh")):
            forms.append(word + "es")
        else:
            forms.append(word + "s")
    return forms


def build() -> dict[str, list[str]]:
    stopwords = set(
        (Path(__file__).resolve().parents[1] / "src/targetaug/data/stopwords.txt")
        .read_text("utf-8")
        .split()
    )
    lexicon: dict[str, list[str]] = {}
    for part, words in GROUPS:
        n_forms = max(len(inflect(part, w)) for w in words)
        for slot in range(n_forms):
            variant = []
            for w in words:
                forms = inflect(part, w)
                if slot < len(forms):
                    variant.append(forms[slot])
            for w in variant:
                if w in stopwords:
                    continue
                synonyms = [s for s in variant if s != w]
                if not synonyms:
                    continue
                existing = lexicon.setdefault(w, [])
                for s in synonyms:
                    if s not in existing:
                        existing.append(s)
    return dict(sorted(lexicon.items()))


def main() -> None:
    out = Path(sys.argv[1]) if len(sys.argv) > 1 else (
        Path(__file__).resolve().parents[1] / "src/targetaug/data/lexicon.json"
    )
    lexicon = build()
    out.write_text(json.dumps(lexicon, indent=1, sort_keys=True) + "\n", "utf-8")
    print(f"wrote {len(lexicon)} lexicon entries to {out}")


if __name__ == "__main__":
    main()
