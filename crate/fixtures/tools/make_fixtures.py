#!/usr/bin/env python3
"""Writes the test fixtures under fixtures/.

golden/    hand-checked parses of the example sentences, their lexicon,
           paraphrase sidecar and the parses of the paraphrases.
captions/  a synthetic caption corpus built from templates with matching
           parses, a lexicon covering its vocabulary, paraphrases, and a
           file of model predictions.

The output is deterministic; rerun after editing and commit the result.
"""

import json
import random
from pathlib import Path

ROOT = Path(__file__).resolve().parent.parent

# Token spec: form/lemma/UPOS/XPOS/head/deprel, optional trailing /NS for
# SpaceAfter=No. A lemma of "=" means the lowercased form.
GOLDEN = {
    "g01": "Fruit/=/NOUN/NN/0/root and/=/CCONJ/CC/1/cc cheese/=/NOUN/NN/1/conj sitting/sit/VERB/VBG/1/acl "
    "on/=/ADP/IN/4/prep a/=/DET/DT/8/det black/=/ADJ/JJ/8/amod plate/=/NOUN/NN/5/pobj",
    "g02": "The/=/DET/DT/3/det male/=/ADJ/JJ/3/amod surfer/=/NOUN/NN/5/nsubj is/be/AUX/VBZ/5/aux "
    "riding/ride/VERB/VBG/0/root a/=/DET/DT/8/det small/=/ADJ/JJ/8/amod wave/=/NOUN/NN/5/dobj",
    "g03": "A/=/DET/DT/2/det person/=/NOUN/NN/7/nsubj with/=/ADP/IN/2/prep red/=/ADJ/JJ/5/amod "
    "shirt/=/NOUN/NN/3/pobj is/be/AUX/VBZ/7/aux running/run/VERB/VBG/0/root near/=/ADP/IN/7/prep "
    "the/=/DET/DT/10/det garden/=/NOUN/NN/8/pobj",
    "g04": "A/=/DET/DT/3/det black/=/ADJ/JJ/3/amod dog/=/NOUN/NN/5/nsubj is/be/AUX/VBZ/5/aux "
    "sleeping/sleep/VERB/VBG/0/root",
    "g05": "boy/=/NOUN/NN/3/nsubj is/be/AUX/VBZ/3/aux dancing/dance/VERB/VBG/0/root in/=/ADP/IN/3/prep "
    "arena/=/NOUN/NN/4/pobj",
    "g06": "People/people/NOUN/NNS/3/nsubj are/be/AUX/VBP/3/aux walking/walk/VERB/VBG/0/root "
    "down/=/ADP/IN/3/prep a/=/DET/DT/8/det busy/=/ADJ/JJ/8/amod city/=/NOUN/NN/8/compound "
    "street/=/NOUN/NN/4/pobj/NS PERIOD/./PUNCT/./3/punct",
    "g07": "A/=/DET/DT/2/det motorbike/=/NOUN/NN/7/nsubjpass and/=/CCONJ/CC/2/cc a/=/DET/DT/5/det "
    "car/=/NOUN/NN/2/conj are/be/AUX/VBP/7/auxpass parked/park/VERB/VBN/0/root",
    "g08": "He/he/PRON/PRP/2/nsubj lives/live/VERB/VBZ/0/root in/=/ADP/IN/2/prep a/=/DET/DT/6/det "
    "big/=/ADJ/JJ/6/amod house/=/NOUN/NN/3/pobj",
    "g09": "Two/two/NUM/CD/2/nummod horses/horse/NOUN/NNS/0/root that/=/PRON/WDT/5/nsubj "
    "are/be/AUX/VBP/5/aux pulling/pull/VERB/VBG/2/relcl a/=/DET/DT/7/det carriage/=/NOUN/NN/5/dobj "
    "in/=/ADP/IN/5/prep the/=/DET/DT/10/det street/=/NOUN/NN/8/pobj",
    "g10": "A/=/DET/DT/2/det girl/=/NOUN/NN/4/nsubj is/be/AUX/VBZ/4/aux walking/walk/VERB/VBG/0/root",
    "g11": "A/=/DET/DT/2/det man/=/NOUN/NN/3/nsubj stands/stand/VERB/VBZ/0/root",
    "g12": "A/=/DET/DT/3/det young/=/ADJ/JJ/3/amod girl/=/NOUN/NN/5/nsubj is/be/AUX/VBZ/5/aux "
    "driving/drive/VERB/VBG/0/root fast/=/ADV/RB/5/advmod on/=/ADP/IN/5/prep the/=/DET/DT/9/det "
    "street/=/NOUN/NN/7/pobj",
    "g13": "There/there/PRON/EX/2/expl is/be/VERB/VBZ/0/root a/=/DET/DT/4/det girl/=/NOUN/NN/2/nsubj "
    "skiing/ski/VERB/VBG/4/acl with/=/ADP/IN/5/prep her/=/PRON/PRP$/8/poss mother/=/NOUN/NN/6/pobj",
    "g14": "A/=/DET/DT/2/det clock/=/NOUN/NN/4/nsubj is/be/AUX/VBZ/4/aux standing/stand/VERB/VBG/0/root "
    "on/=/ADP/IN/4/prep top/=/NOUN/NN/5/pobj of/=/ADP/IN/6/prep a/=/DET/DT/10/det "
    "concrete/=/ADJ/JJ/10/amod pillar/=/NOUN/NN/7/pobj",
    "g15": "A/=/DET/DT/2/det man/=/NOUN/NN/4/nsubj is/be/AUX/VBZ/4/aux flying/fly/VERB/VBG/0/root "
    "a/=/DET/DT/6/det kite/=/NOUN/NN/4/dobj on/=/ADP/IN/4/prep the/=/DET/DT/9/det "
    "beach/=/NOUN/NN/7/pobj/NS PERIOD/./PUNCT/./4/punct",
    "g16": "Empty/empty/ADJ/JJ/2/amod fog/=/NOUN/NN/3/nsubj covered/cover/VERB/VBD/0/root "
    "streets/street/NOUN/NNS/3/dobj in/=/ADP/IN/3/prep the/=/DET/DT/7/det night/=/NOUN/NN/5/pobj",
    "g17": "A/=/DET/DT/2/det boy/=/NOUN/NN/0/root with/=/ADP/IN/2/prep gloves/glove/NOUN/NNS/3/pobj "
    "on/=/ADP/IN/2/prep a/=/DET/DT/7/det field/=/NOUN/NN/5/pobj throwing/throw/VERB/VBG/2/acl "
    "a/=/DET/DT/10/det ball/=/NOUN/NN/8/dobj/NS PERIOD/./PUNCT/./2/punct",
    "g18": "Car/car/NOUN/NN/2/nsubj has/have/VERB/VBZ/0/root four/=/NUM/CD/5/nummod red/=/ADJ/JJ/5/amod "
    "lights/light/NOUN/NNS/2/dobj",
    "g19": "Two/two/NUM/CD/4/nummod green/=/ADJ/JJ/4/amod traffics/traffic/NOUN/NNS/4/compound "
    "lights/light/NOUN/NNS/0/root in/=/ADP/IN/4/prep a/=/DET/DT/8/det European/european/ADJ/JJ/8/amod "
    "city/=/NOUN/NN/5/pobj/NS PERIOD/./PUNCT/./4/punct",
    "g20": "Sign/sign/NOUN/NN/0/root for/=/ADP/IN/1/prep an/=/DET/DT/5/det ancient/=/ADJ/JJ/5/amod "
    "monument/=/NOUN/NN/2/pobj on/=/ADP/IN/1/prep the/=/DET/DT/8/det roadside/=/NOUN/NN/6/pobj",
    "g21": "A/=/DET/DT/2/det man/=/NOUN/NN/3/nsubj goes/go/VERB/VBZ/0/root to/=/PART/TO/5/aux "
    "strike/=/VERB/VB/3/xcomp a/=/DET/DT/8/det tennis/=/NOUN/NN/8/compound ball/=/NOUN/NN/5/dobj",
    "g22": "A/=/DET/DT/2/det car/=/NOUN/NN/0/root parked/park/VERB/VBN/2/acl near/=/ADP/IN/3/prep "
    "the/=/DET/DT/6/det fence/=/NOUN/NN/4/pobj",
    "g23": "two/=/NUM/CD/2/nummod dogs/dog/NOUN/NNS/0/root running/run/VERB/VBG/2/acl "
    "through/=/ADP/IN/3/prep the/=/DET/DT/6/det snow/=/NOUN/NN/4/pobj",
    "g24": "Bunch/bunch/NOUN/NN/4/nsubj of/=/ADP/IN/1/prep bananas/banana/NOUN/NNS/2/pobj "
    "are/be/AUX/VBP/0/root on/=/ADP/IN/4/prep a/=/DET/DT/7/det table/=/NOUN/NN/5/pobj",
    "g25": "a/=/DET/DT/3/det food/=/NOUN/NN/3/compound plate/=/NOUN/NN/0/root on/=/ADP/IN/3/prep "
    "a/=/DET/DT/6/det table/=/NOUN/NN/4/pobj with/=/ADP/IN/6/prep a/=/DET/DT/9/det "
    "glass/=/NOUN/NN/7/pobj/NS PERIOD/./PUNCT/./3/punct",
    "g26": "A/=/DET/DT/3/det small/=/ADJ/JJ/3/amod child/=/NOUN/NN/5/nsubj is/be/AUX/VBZ/5/aux "
    "sleeping/sleep/VERB/VBG/0/root in/=/ADP/IN/5/prep a/=/DET/DT/8/det bed/=/NOUN/NN/6/pobj "
    "with/=/ADP/IN/8/prep a/=/DET/DT/12/det bed/=/NOUN/NN/12/compound cover/=/NOUN/NN/9/pobj",
    "g27": "A/=/DET/DT/2/det child/=/NOUN/NN/3/nsubj laying/lay/VERB/VBG/0/root in/=/ADP/IN/3/prep "
    "bed/=/NOUN/NN/4/pobj sleeping/sleep/VERB/VBG/3/advcl with/=/ADP/IN/6/prep a/=/DET/DT/9/det "
    "chair/=/NOUN/NN/7/pobj near/=/ADV/RB/11/advmod by/=/ADV/RB/6/advmod",
    "g28": "A/=/DET/DT/3/det large/=/ADJ/JJ/3/amod elephant/=/NOUN/NN/4/nsubj is/be/AUX/VBZ/0/root "
    "very/=/ADV/RB/6/advmod close/=/ADJ/JJ/4/acomp to/=/ADP/IN/6/prep the/=/DET/DT/9/det "
    "camera/=/NOUN/NN/7/pobj",
    "g29": "A/=/DET/DT/2/det woman/=/NOUN/NN/0/root holding/hold/VERB/VBG/2/acl a/=/DET/DT/5/det "
    "baby/=/NOUN/NN/3/dobj while/=/SCONJ/IN/9/mark a/=/DET/DT/8/det man/=/NOUN/NN/9/nsubj "
    "takes/take/VERB/VBZ/3/advcl a/=/DET/DT/11/det picture/=/NOUN/NN/9/dobj of/=/ADP/IN/11/prep "
    "them/they/PRON/PRP/12/pobj",
    "g30": "A/=/DET/DT/2/det girl/=/NOUN/NN/5/nsubj is/be/AUX/VBZ/5/aux not/=/PART/RB/5/neg "
    "smiling/smile/VERB/VBG/0/root",
    "g31": "A/=/DET/DT/2/det girl/=/NOUN/NN/3/nsubj smiles/smile/VERB/VBZ/0/root",
    "g32": "A/=/DET/DT/3/det black/=/ADJ/JJ/3/amod dog/=/NOUN/NN/5/nsubj is/be/AUX/VBZ/5/aux "
    "sleeping/sleep/VERB/VBG/0/root/NS PERIOD/./PUNCT/./5/punct",
    "g33": "A/=/DET/DT/4/det very/=/ADV/RB/3/advmod beautiful/=/ADJ/JJ/4/amod girl/=/NOUN/NN/6/nsubj "
    "is/be/AUX/VBZ/6/aux standing/stand/VERB/VBG/0/root outside/=/ADP/IN/6/prep the/=/DET/DT/9/det "
    "park/=/NOUN/NN/7/pobj",
    "g34": "A/=/DET/DT/5/det middle/=/NOUN/NN/4/npadvmod/NS -/-/PUNCT/HYPH/4/punct/NS aged/=/ADJ/JJ/5/amod "
    "man/=/NOUN/NN/11/nsubj in/=/ADP/IN/5/prep a/=/DET/DT/9/det beige/=/ADJ/JJ/9/amod vest/=/NOUN/NN/6/pobj "
    "is/be/AUX/VBZ/11/aux sleeping/sleep/VERB/VBG/0/root on/=/ADP/IN/11/prep a/=/DET/DT/15/det "
    "wooden/=/ADJ/JJ/15/amod bench/=/NOUN/NN/12/pobj/NS PERIOD/./PUNCT/./11/punct",
    "g35": "Hello/hello/INTJ/UH/0/root/NS PERIOD/./PUNCT/./1/punct",
}

GOLDEN_REPARSE = {
    "p28": "Elephant/elephant/NOUN/NN/2/nsubj is/be/AUX/VBZ/0/root very/=/ADV/RB/4/advmod "
    "close/=/ADJ/JJ/2/acomp to/=/ADP/IN/4/prep the/=/DET/DT/7/det camera/=/NOUN/NN/5/pobj",
    "p29": "A/=/DET/DT/2/det man/=/NOUN/NN/4/nsubj is/be/AUX/VBZ/4/aux taking/take/VERB/VBG/0/root "
    "a/=/DET/DT/6/det picture/=/NOUN/NN/4/dobj of/=/ADP/IN/6/prep a/=/DET/DT/9/det woman/=/NOUN/NN/7/pobj "
    "and/=/CCONJ/CC/9/cc a/=/DET/DT/12/det baby/=/NOUN/NN/9/conj",
    "p01": "There/there/PRON/EX/2/expl is/be/VERB/VBZ/0/root fruit/=/NOUN/NN/2/nsubj and/=/CCONJ/CC/3/cc "
    "cheese/=/NOUN/NN/3/conj on/=/ADP/IN/2/prep a/=/DET/DT/9/det black/=/ADJ/JJ/9/amod plate/=/NOUN/NN/6/pobj",
}

GOLDEN_PARAPHRASES = [
    ("g01", "p01"),
    ("g28", "p28"),
    ("g29", "p29"),
]

GOLDEN_LEXICON = """\
# Relations used by the golden examples.
hypernym\tdog\tanimal
hypernym\tmotorbike\tautomobile
hypernym\tcar\tautomobile
hypernym\tcamera\tphotographic equipment
hypernym\tapple\tfruit
hypernym\tbanana\tfruit
hypernym\talcohol\tbeverage
hypernym\talcohol\tdrink
antonym\tbig\tsmall
antonym\tsmall\tbig
contra_noun\thorse\tdog
contra_noun\tman\tkid
contra_noun\twoman\tmale
contra_noun\tkitchen\tbedroom
contra_noun\tkitchen\tbathroom
contra_noun\tkitchen\ttoilet
contra_noun\tmotorcycle\ttruck
contra_noun\tmotorcycle\tscooter
contra_noun\tmotorcycle\tcar
contra_verb\twalk\tdrive
contra_verb\twalk\tski
contra_verb\tstand\tsprint
contra_verb\tstand\tcycle
contra_verb\tstand\tdrive
contra_verb\tstand\tjump
contra_verb\tstand\tsit
modifier\tcar\tsilver
modifier\tdog\tbig
conceptnet:AtLocation\ttable\tkitchen
conceptnet:MadeOf\tglass\tplastic
"""


def parse_spec(spec):
    tokens = []
    for i, item in enumerate(spec.split(), start=1):
        parts = item.split("/")
        nospace = parts[-1] == "NS"
        if nospace:
            parts = parts[:-1]
        form, lemma, upos, xpos, head, deprel = parts
        if form == "PERIOD":
            form = "."
        if lemma == "=":
            lemma = form.lower()
        tokens.append((i, form, lemma, upos, xpos, int(head), deprel, nospace))
    return tokens


def detok(tokens):
    out = []
    for t in tokens:
        out.append(t[1])
        if not t[7]:
            out.append(" ")
    return "".join(out).rstrip(" ")


def block(sent_id, tokens):
    lines = [f"# sent_id = {sent_id}", f"# text = {detok(tokens)}"]
    for i, form, lemma, upos, xpos, head, deprel, nospace in tokens:
        misc = "SpaceAfter=No" if nospace else "_"
        lines.append(f"{i}\t{form}\t{lemma}\t{upos}\t{xpos}\t_\t{head}\t{deprel}\t_\t{misc}")
    return "\n".join(lines) + "\n"


def write_conllu(path, blocks):
    path.write_text("\n".join(blocks), encoding="utf-8")


def golden():
    out = ROOT / "golden"
    out.mkdir(parents=True, exist_ok=True)
    write_conllu(out / "golden.conllu", [block(k, parse_spec(v)) for k, v in GOLDEN.items()])
    reparsed = {k: parse_spec(v) for k, v in GOLDEN_REPARSE.items()}
    write_conllu(out / "reparse.conllu", [block(k, t) for k, t in reparsed.items()])
    rows = [f"{sid}\t{detok(reparsed[pid])}" for sid, pid in GOLDEN_PARAPHRASES]
    (out / "paraphrases.tsv").write_text("\n".join(rows) + "\n", encoding="utf-8")
    (out / "golden.lexicon.tsv").write_text(GOLDEN_LEXICON, encoding="utf-8")


# Caption vocabulary. Verbs: lemma -> (3sg, past, gerund).
VERBS = {
    "walk": ("walks", "walked", "walking"),
    "run": ("runs", "ran", "running"),
    "sit": ("sits", "sat", "sitting"),
    "stand": ("stands", "stood", "standing"),
    "sleep": ("sleeps", "slept", "sleeping"),
    "play": ("plays", "played", "playing"),
    "jump": ("jumps", "jumped", "jumping"),
}
TRANSITIVE = {
    "hold": ("holds", "held", "holding"),
    "carry": ("carries", "carried", "carrying"),
    "throw": ("throws", "threw", "throwing"),
    "watch": ("watches", "watched", "watching"),
    "eat": ("eats", "ate", "eating"),
}
AGENTS = ["man", "woman", "boy", "girl", "child", "dog", "cat", "horse"]
AGENT_PLURAL = {
    "man": "men", "woman": "women", "boy": "boys", "girl": "girls", "child": "children",
    "dog": "dogs", "cat": "cats", "horse": "horses",
}
OBJECTS = ["ball", "frisbee", "apple", "banana", "bag", "kite", "sandwich", "umbrella"]
PLACES = ["street", "park", "beach", "field", "kitchen", "road", "garden"]
ADJECTIVES = ["big", "small", "young", "old", "black", "white", "happy", "sad", "brown"]
NUMBERS = ["two", "three", "four", "five"]

CAPTION_LEXICON = [
    ("hypernym", "dog", "animal"), ("hypernym", "cat", "animal"), ("hypernym", "horse", "animal"),
    ("hypernym", "man", "person"), ("hypernym", "woman", "person"), ("hypernym", "boy", "person"),
    ("hypernym", "girl", "person"), ("hypernym", "child", "person"),
    ("hypernym", "apple", "fruit"), ("hypernym", "banana", "fruit"),
    ("hypernym", "ball", "toy"), ("hypernym", "frisbee", "toy"), ("hypernym", "kite", "toy"),
    ("hypernym", "street", "place"), ("hypernym", "road", "place"),
    ("antonym", "big", "small"), ("antonym", "small", "big"),
    ("antonym", "young", "old"), ("antonym", "old", "young"),
    ("antonym", "black", "white"), ("antonym", "white", "black"),
    ("antonym", "happy", "sad"), ("antonym", "sad", "happy"),
    ("contra_noun", "man", "woman"), ("contra_noun", "woman", "man"),
    ("contra_noun", "boy", "girl"), ("contra_noun", "girl", "boy"),
    ("contra_noun", "dog", "cat"), ("contra_noun", "cat", "dog"),
    ("contra_noun", "beach", "kitchen"), ("contra_noun", "kitchen", "beach"),
    ("contra_noun", "apple", "sandwich"), ("contra_noun", "kite", "umbrella"),
    ("contra_verb", "walk", "sit"), ("contra_verb", "walk", "sleep"),
    ("contra_verb", "run", "sit"), ("contra_verb", "run", "sleep"),
    ("contra_verb", "sit", "run"), ("contra_verb", "sit", "stand"),
    ("contra_verb", "sleep", "run"), ("contra_verb", "sleep", "walk"), ("contra_verb", "sleep", "play"),
    ("contra_verb", "stand", "sit"), ("contra_verb", "play", "sleep"),
    ("contra_verb", "jump", "sit"), ("contra_verb", "eat", "throw"),
    ("modifier", "dog", "brown"), ("modifier", "dog", "fluffy"), ("modifier", "dog", "big"),
    ("modifier", "man", "tall"), ("modifier", "woman", "tall"), ("modifier", "girl", "little"),
    ("modifier", "ball", "red"), ("modifier", "bag", "leather"), ("modifier", "horse", "old"),
    ("modifier", "kite", "colorful"), ("modifier", "street", "busy"),
    ("conceptnet:AtLocation", "sandwich", "kitchen"), ("conceptnet:AtLocation", "ball", "park"),
    ("conceptnet:MadeOf", "bag", "leather"), ("conceptnet:MadeOf", "ball", "rubber"),
    ("conceptnet:DefinedAs", "dog", "a pet"),
    ("conceptnet:UsedFor", "kite", "flying"),
]


def article(word):
    return "an" if word[0] in "aeiou" else "a"


def cap(word):
    return word[0].upper() + word[1:]


def tok(form, lemma, upos, xpos, head, deprel, nospace=False):
    return [form, lemma, upos, xpos, head, deprel, nospace]


def finish(tokens, period):
    """Numbers the token list; heads given as list positions are shifted."""
    if period:
        tokens[-1][6] = True
        root = next(i for i, t in enumerate(tokens) if t[5] == "root")
        tokens.append(tok(".", ".", "PUNCT", ".", root, "punct"))
    out = []
    for i, (form, lemma, upos, xpos, head, deprel, nospace) in enumerate(tokens, start=1):
        h = 0 if deprel == "root" else head + 1
        out.append((i, form, lemma, upos, xpos, h, deprel, nospace))
    out[0] = (out[0][0], cap(out[0][1])) + out[0][2:]
    return out


def caption(rng):
    """One caption as a token list with 0-based heads."""
    kind = rng.randrange(8)
    agent = rng.choice(AGENTS)
    adj = rng.choice(ADJECTIVES)
    verb = rng.choice(list(VERBS))
    place = rng.choice(PLACES)
    if kind == 0:
        # A big dog is running in the park
        t = [
            tok(article(adj), None, "DET", "DT", 2, "det"),
            tok(adj, adj, "ADJ", "JJ", 2, "amod"),
            tok(agent, agent, "NOUN", "NN", 4, "nsubj"),
            tok("is", "be", "AUX", "VBZ", 4, "aux"),
            tok(VERBS[verb][2], verb, "VERB", "VBG", 0, "root"),
            tok("in", "in", "ADP", "IN", 4, "prep"),
            tok("the", "the", "DET", "DT", 7, "det"),
            tok(place, place, "NOUN", "NN", 5, "pobj"),
        ]
    elif kind == 1:
        # A girl is holding a ball on the beach
        v = rng.choice(list(TRANSITIVE))
        obj = rng.choice(OBJECTS)
        t = [
            tok(article(agent), None, "DET", "DT", 1, "det"),
            tok(agent, agent, "NOUN", "NN", 3, "nsubj"),
            tok("is", "be", "AUX", "VBZ", 3, "aux"),
            tok(TRANSITIVE[v][2], v, "VERB", "VBG", 0, "root"),
            tok(article(obj), None, "DET", "DT", 5, "det"),
            tok(obj, obj, "NOUN", "NN", 3, "dobj"),
        ]
        if rng.random() < 0.5:
            t += [
                tok("on", "on", "ADP", "IN", 3, "prep"),
                tok("the", "the", "DET", "DT", 8, "det"),
                tok(place, place, "NOUN", "NN", 6, "pobj"),
            ]
    elif kind == 2:
        # Three small dogs are sleeping near the road
        num = rng.choice(NUMBERS)
        plural = AGENT_PLURAL[agent]
        t = [
            tok(num, num, "NUM", "CD", 2, "nummod"),
            tok(adj, adj, "ADJ", "JJ", 2, "amod"),
            tok(plural, agent, "NOUN", "NNS", 4, "nsubj"),
            tok("are", "be", "AUX", "VBP", 4, "aux"),
            tok(VERBS[verb][2], verb, "VERB", "VBG", 0, "root"),
            tok("near", "near", "ADP", "IN", 4, "prep"),
            tok("the", "the", "DET", "DT", 7, "det"),
            tok(place, place, "NOUN", "NN", 5, "pobj"),
        ]
    elif kind == 3:
        # A dog and a cat are playing
        other = rng.choice([a for a in AGENTS if a != agent])
        t = [
            tok(article(agent), None, "DET", "DT", 1, "det"),
            tok(agent, agent, "NOUN", "NN", 6, "nsubj"),
            tok("and", "and", "CCONJ", "CC", 1, "cc"),
            tok(article(other), None, "DET", "DT", 4, "det"),
            tok(other, other, "NOUN", "NN", 1, "conj"),
            tok("are", "be", "AUX", "VBP", 6, "aux"),
            tok(VERBS[verb][2], verb, "VERB", "VBG", 0, "root"),
        ]
    elif kind == 4:
        # A boy threw the frisbee
        v = rng.choice(list(TRANSITIVE))
        obj = rng.choice(OBJECTS)
        t = [
            tok(article(agent), None, "DET", "DT", 1, "det"),
            tok(agent, agent, "NOUN", "NN", 2, "nsubj"),
            tok(TRANSITIVE[v][1], v, "VERB", "VBD", 0, "root"),
            tok("the", "the", "DET", "DT", 4, "det"),
            tok(obj, obj, "NOUN", "NN", 2, "dobj"),
        ]
    elif kind == 5:
        # A man sits on the bench
        t = [
            tok(article(agent), None, "DET", "DT", 1, "det"),
            tok(agent, agent, "NOUN", "NN", 2, "nsubj"),
            tok(VERBS[verb][0], verb, "VERB", "VBZ", 0, "root"),
            tok("on", "on", "ADP", "IN", 2, "prep"),
            tok("the", "the", "DET", "DT", 5, "det"),
            tok(place, place, "NOUN", "NN", 3, "pobj"),
        ]
    elif kind == 6:
        # There is a dog sleeping in the garden
        t = [
            tok("there", "there", "PRON", "EX", 1, "expl"),
            tok("is", "be", "VERB", "VBZ", 0, "root"),
            tok(article(agent), None, "DET", "DT", 3, "det"),
            tok(agent, agent, "NOUN", "NN", 1, "nsubj"),
            tok(VERBS[verb][2], verb, "VERB", "VBG", 3, "acl"),
            tok("in", "in", "ADP", "IN", 4, "prep"),
            tok("the", "the", "DET", "DT", 7, "det"),
            tok(place, place, "NOUN", "NN", 5, "pobj"),
        ]
    else:
        # A happy child with a kite walking very slowly down the street
        obj = rng.choice(OBJECTS)
        t = [
            tok(article(adj), None, "DET", "DT", 2, "det"),
            tok(adj, adj, "ADJ", "JJ", 2, "amod"),
            tok(agent, agent, "NOUN", "NN", 0, "root"),
            tok("with", "with", "ADP", "IN", 2, "prep"),
            tok(article(obj), None, "DET", "DT", 5, "det"),
            tok(obj, obj, "NOUN", "NN", 3, "pobj"),
            tok(VERBS[verb][2], verb, "VERB", "VBG", 2, "acl"),
            tok("very", "very", "ADV", "RB", 8, "advmod"),
            tok("slowly", "slowly", "ADV", "RB", 6, "advmod"),
            tok("down", "down", "ADP", "IN", 6, "prep"),
            tok("the", "the", "DET", "DT", 11, "det"),
            tok(place, place, "NOUN", "NN", 9, "pobj"),
        ]
    for x in t:
        if x[1] is None:
            x[1] = x[0]
    return kind, agent, verb, place, finish(t, rng.random() < 0.3)


def paraphrase(agent, verb, place):
    """'There is a dog running in the park' with its parse."""
    t = [
        tok("there", "there", "PRON", "EX", 1, "expl"),
        tok("is", "be", "VERB", "VBZ", 0, "root"),
        tok(article(agent), article(agent), "DET", "DT", 3, "det"),
        tok(agent, agent, "NOUN", "NN", 1, "nsubj"),
        tok(VERBS[verb][2], verb, "VERB", "VBG", 3, "acl"),
        tok("in", "in", "ADP", "IN", 1, "prep"),
        tok("the", "the", "DET", "DT", 7, "det"),
        tok(place, place, "NOUN", "NN", 5, "pobj"),
    ]
    return finish(t, False)


def predictions(rng, captions, n):
    rows = []
    for i in range(n):
        sid, toks = captions[i % len(captions)]
        premise = detok(toks)
        hyp = detok(captions[(i * 7 + 3) % len(captions)][1])
        shape = i % 5
        if shape == 0:
            p = [0.4, 0.4, 0.2]
        elif shape == 1:
            hi = rng.choice([0.8, 0.9, 0.95, 1.0])
            rest = round(1.0 - hi, 3)
            p = [hi, round(rest / 2, 4), round(rest - round(rest / 2, 4), 4)]
            rng.shuffle(p)
        else:
            raw = [rng.random() for _ in range(3)]
            total = sum(raw)
            p = [round(x / total, 4) for x in raw]
            p[2] = round(1.0 - p[0] - p[1], 4)
        rows.append({"premise": premise, "hypothesis": hyp, "probs": p})
    return rows


def captions():
    out = ROOT / "captions"
    out.mkdir(parents=True, exist_ok=True)
    rng = random.Random(7)
    corpus = []
    paraphrases = []
    reparse = []
    seen = set()
    while len(corpus) < 100:
        kind, agent, verb, place, toks = caption(rng)
        text = detok(toks)
        if text in seen:
            continue
        seen.add(text)
        sid = f"cap-{len(corpus) + 1:03d}"
        corpus.append((sid, toks))
        if kind in (0, 5, 6, 7):
            para = paraphrase(agent, verb, place)
            if detok(para) != text:
                paraphrases.append(f"{sid}\t{detok(para)}")
                reparse.append(para)
    write_conllu(out / "captions100.conllu", [block(s, t) for s, t in corpus])
    (out / "paraphrases.tsv").write_text("\n".join(paraphrases) + "\n", encoding="utf-8")
    uniq = {}
    for p in reparse:
        uniq.setdefault(detok(p), p)
    write_conllu(out / "reparse.conllu", [block(f"para-{i + 1:03d}", t) for i, t in enumerate(uniq.values())])
    lex = "\n".join("\t".join(r) for r in CAPTION_LEXICON) + "\n"
    (out / "captions.lexicon.tsv").write_text("# Relations for the caption corpus.\n" + lex, encoding="utf-8")

    prng = random.Random(11)
    pool = []
    while len(pool) < 1000:
        _, _, _, _, toks = caption(prng)
        pool.append((f"pool-{len(pool) + 1:04d}", toks))
    write_conllu(out / "pool1000.conllu", [block(s, t) for s, t in pool])

    rows = predictions(random.Random(5), corpus, 50)
    with open(out / "preds50.jsonl", "w", encoding="utf-8") as f:
        for r in rows:
            f.write(json.dumps(r) + "\n")


if __name__ == "__main__":
    golden()
    captions()
