//! English inflection rules used when a substituted word has to agree with
//! the form it replaces.

use std::collections::HashMap;
use std::sync::OnceLock;

use crate::conllu::Token;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum VerbForm {
    Base,
    ThirdSingular,
    Past,
    PastParticiple,
    Gerund,
}

/// base past participle
const IRREGULAR_VERBS: &str = "\
arise arose arisen|awake awoke awoken|be was been|bear bore borne|beat beat beaten|\
become became become|begin began begun|bend bent bent|bet bet bet|bid bid bid|\
bind bound bound|bite bit bitten|bleed bled bled|blow blew blown|break broke broken|\
breed bred bred|bring brought brought|broadcast broadcast broadcast|build built built|\
burn burnt burnt|burst burst burst|buy bought bought|cast cast cast|catch caught caught|\
choose chose chosen|cling clung clung|come came come|cost cost cost|creep crept crept|\
cut cut cut|deal dealt dealt|dig dug dug|dive dove dived|do did done|draw drew drawn|\
dream dreamt dreamt|drink drank drunk|drive drove driven|dwell dwelt dwelt|eat ate eaten|\
fall fell fallen|feed fed fed|feel felt felt|fight fought fought|find found found|\
flee fled fled|fling flung flung|fly flew flown|forbid forbade forbidden|\
forecast forecast forecast|forget forgot forgotten|forgive forgave forgiven|\
freeze froze frozen|get got gotten|give gave given|go went gone|grind ground ground|\
grow grew grown|hang hung hung|have had had|hear heard heard|hide hid hidden|hit hit hit|\
hold held held|hurt hurt hurt|keep kept kept|kneel knelt knelt|know knew known|\
lay laid laid|lead led led|lean leant leant|leap leapt leapt|learn learnt learnt|\
leave left left|lend lent lent|let let let|lie lay lain|light lit lit|lose lost lost|\
make made made|mean meant meant|meet met met|mislead misled misled|mistake mistook mistaken|\
mow mowed mown|overcome overcame overcome|overtake overtook overtaken|pay paid paid|\
prove proved proven|put put put|quit quit quit|read read read|rebuild rebuilt rebuilt|\
rid rid rid|ride rode ridden|ring rang rung|rise rose risen|run ran run|saw sawed sawn|\
say said said|see saw seen|seek sought sought|sell sold sold|send sent sent|set set set|\
sew sewed sewn|shake shook shaken|shed shed shed|shine shone shone|shoot shot shot|\
show showed shown|shrink shrank shrunk|shut shut shut|sing sang sung|sink sank sunk|\
sit sat sat|slay slew slain|sleep slept slept|slide slid slid|sling slung slung|\
slit slit slit|smell smelt smelt|sow sowed sown|speak spoke spoken|speed sped sped|\
spell spelt spelt|spend spent spent|spill spilt spilt|spin spun spun|spit spat spat|\
split split split|spoil spoilt spoilt|spread spread spread|spring sprang sprung|\
stand stood stood|steal stole stolen|stick stuck stuck|sting stung stung|stink stank stunk|\
stride strode stridden|strike struck struck|string strung strung|strive strove striven|\
swear swore sworn|sweep swept swept|swell swelled swollen|swim swam swum|swing swung swung|\
take took taken|teach taught taught|tear tore torn|tell told told|think thought thought|\
throw threw thrown|thrust thrust thrust|tread trod trodden|understand understood understood|\
undertake undertook undertaken|undo undid undone|upset upset upset|wake woke woken|\
wear wore worn|weave wove woven|weep wept wept|wet wet wet|win won won|wind wound wound|\
withdraw withdrew withdrawn|withhold withheld withheld|withstand withstood withstood|\
wring wrung wrung|write wrote written|babysit babysat babysat|backslide backslid backslid|\
bake baked baked|befall befell befallen|beget begot begotten|behold beheld beheld|\
beseech besought besought|bestride bestrode bestridden|bless blest blest|\
browbeat browbeat browbeaten|cleave clove cloven|clothe clad clad|daydream daydreamt daydreamt|\
foresee foresaw foreseen|foretell foretold foretold|forsake forsook forsaken|\
hew hewed hewn|input input input|inlay inlaid inlaid|interweave interwove interwoven|\
misread misread misread|misspell misspelt misspelt|misunderstand misunderstood misunderstood|\
offset offset offset|outdo outdid outdone|outgrow outgrew outgrown|outrun outran outrun|\
outshine outshone outshone|overdo overdid overdone|overeat overate overeaten|\
overhang overhung overhung|overhear overheard overheard|overpay overpaid overpaid|\
override overrode overridden|overrun overran overrun|oversee oversaw overseen|\
oversleep overslept overslept|overthrow overthrew overthrown|partake partook partaken|\
plead pled pled|redo redid redone|remake remade remade|repay repaid repaid|\
rerun reran rerun|resell resold resold|reset reset reset|retell retold retold|\
rewind rewound rewound|rewrite rewrote rewritten|shear sheared shorn|shoe shod shod|\
sightsee sightsaw sightseen|slink slunk slunk|smite smote smitten|stave stove stove|\
strew strewed strewn|sunburn sunburnt sunburnt|swim swam swum|typeset typeset typeset|\
unbend unbent unbent|unbind unbound unbound|underlie underlay underlain|\
undergo underwent undergone|underpay underpaid underpaid|undersell undersold undersold|\
unwind unwound unwound|uphold upheld upheld|waylay waylaid waylaid|bring brought brought|\
skydive skydove skydived|hold held held|spit spat spat|sneak snuck snuck|fit fit fit|\
knit knit knit|broadcast broadcast broadcast|lie lay lain|ski skied skied";

/// Verbs whose final consonant doubles despite having more than one
/// syllable (stress on the last syllable).
const DOUBLING: &[&str] = &[
    "admit", "begin", "commit", "compel", "control", "equip", "excel", "forget", "occur",
    "omit", "patrol", "permit", "prefer", "propel", "rebel", "refer", "regret", "submit",
    "transfer", "upset", "format", "kidnap", "worship",
];

struct Irregular {
    past: String,
    participle: String,
}

fn irregulars() -> &'static HashMap<String, Irregular> {
    static TABLE: OnceLock<HashMap<String, Irregular>> = OnceLock::new();
    TABLE.get_or_init(|| {
        IRREGULAR_VERBS
            .split('|')
            .filter_map(|entry| {
                let mut parts = entry.split_whitespace();
                let base = parts.next()?;
                let past = parts.next()?;
                let participle = parts.next()?;
                Some((
                    base.to_owned(),
                    Irregular {
                        past: past.to_owned(),
                        participle: participle.to_owned(),
                    },
                ))
            })
            .collect()
    })
}

pub fn irregular_count() -> usize {
    irregulars().len()
}

fn is_vowel(c: char) -> bool {
    matches!(c, 'a' | 'e' | 'i' | 'o' | 'u')
}

fn vowel_groups(word: &str) -> usize {
    let mut groups = 0;
    let mut prev = false;
    for c in word.chars() {
        let v = is_vowel(c) || c == 'y' && prev;
        if v && !prev {
            groups += 1;
        }
        prev = v;
    }
    groups
}

/// Consonant-vowel-consonant ending on a stressed final syllable.
fn doubles_final(word: &str) -> bool {
    let chars: Vec<char> = word.chars().collect();
    if chars.len() < 3 {
        return false;
    }
    let (a, b, c) = (chars[chars.len() - 3], chars[chars.len() - 2], chars[chars.len() - 1]);
    let cvc = !is_vowel(a) && is_vowel(b) && !is_vowel(c) && !matches!(c, 'w' | 'x' | 'y');
    cvc && (vowel_groups(word) == 1 || DOUBLING.contains(&word))
}

fn regular_stem(lemma: &str, suffix: &str) -> String {
    let last = lemma.chars().last().unwrap_or(' ');
    if doubles_final(lemma) {
        return format!("{lemma}{last}{suffix}");
    }
    match suffix {
        "ed" => {
            if lemma.ends_with('e') {
                format!("{lemma}d")
            } else if ends_consonant_y(lemma) {
                format!("{}ied", &lemma[..lemma.len() - 1])
            } else {
                format!("{lemma}ed")
            }
        }
        "ing" => {
            if let Some(stem) = lemma.strip_suffix("ie") {
                format!("{stem}ying")
            } else if lemma.ends_with('e') && !lemma.ends_with("ee") && !lemma.ends_with("ye") && !lemma.ends_with("oe") && lemma.len() > 2 {
                format!("{}ing", &lemma[..lemma.len() - 1])
            } else {
                format!("{lemma}ing")
            }
        }
        _ => format!("{lemma}{suffix}"),
    }
}

fn ends_consonant_y(word: &str) -> bool {
    let mut it = word.chars().rev();
    matches!((it.next(), it.next()), (Some('y'), Some(c)) if !is_vowel(c))
}

fn sibilant_plural(word: &str) -> bool {
    ["s", "x", "z", "ch", "sh"].iter().any(|e| word.ends_with(e))
}

/// Inflects a verb lemma into the requested form.
pub fn inflect_verb(lemma: &str, form: VerbForm) -> String {
    let lemma = lemma.to_lowercase();
    match (lemma.as_str(), form) {
        ("be", VerbForm::ThirdSingular) => return "is".into(),
        ("be", VerbForm::Gerund) => return "being".into(),
        ("have", VerbForm::ThirdSingular) => return "has".into(),
        _ => {}
    }
    match form {
        VerbForm::Base => lemma,
        VerbForm::ThirdSingular => {
            if ends_consonant_y(&lemma) {
                format!("{}ies", &lemma[..lemma.len() - 1])
            } else if sibilant_plural(&lemma) || lemma.ends_with('o') {
                format!("{lemma}es")
            } else {
                format!("{lemma}s")
            }
        }
        VerbForm::Past => match irregulars().get(&lemma) {
            Some(irr) => irr.past.clone(),
            None => regular_stem(&lemma, "ed"),
        },
        VerbForm::PastParticiple => match irregulars().get(&lemma) {
            Some(irr) => irr.participle.clone(),
            None => regular_stem(&lemma, "ed"),
        },
        VerbForm::Gerund => regular_stem(&lemma, "ing"),
    }
}

/// Reads the inflectional form of a verb token from its features, its
/// Penn tag, or, failing both, its suffix.
pub fn verb_form_of(t: &Token) -> VerbForm {
    match (t.feat("VerbForm"), t.feat("Tense")) {
        (Some("Ger"), _) => return VerbForm::Gerund,
        (Some("Part"), Some("Pres")) => return VerbForm::Gerund,
        (Some("Part"), _) => return VerbForm::PastParticiple,
        (Some("Fin"), Some("Past")) => return VerbForm::Past,
        (Some("Fin"), Some("Pres")) => {
            return if t.feat("Person") == Some("3") && t.feat("Number") != Some("Plur") {
                VerbForm::ThirdSingular
            } else {
                VerbForm::Base
            }
        }
        (Some("Inf"), _) => return VerbForm::Base,
        _ => {}
    }
    match t.xpos.as_deref() {
        Some("VBG") => return VerbForm::Gerund,
        Some("VBN") => return VerbForm::PastParticiple,
        Some("VBD") => return VerbForm::Past,
        Some("VBZ") => return VerbForm::ThirdSingular,
        Some("VB" | "VBP") => return VerbForm::Base,
        _ => {}
    }
    let form = t.form.to_lowercase();
    let lemma = t.lemma_key();
    if form == lemma {
        VerbForm::Base
    } else if form.ends_with("ing") {
        VerbForm::Gerund
    } else if form == inflect_verb(&lemma, VerbForm::ThirdSingular) {
        VerbForm::ThirdSingular
    } else {
        VerbForm::Past
    }
}

/// True for finite forms, i.e. ones that can carry do-support.
pub fn is_finite(t: &Token) -> bool {
    match t.feat("VerbForm") {
        Some(v) => v == "Fin",
        None => matches!(
            verb_form_of(t),
            VerbForm::Past | VerbForm::ThirdSingular | VerbForm::Base
        ),
    }
}

const IRREGULAR_PLURALS: &[(&str, &str)] = &[
    ("man", "men"),
    ("woman", "women"),
    ("child", "children"),
    ("person", "people"),
    ("foot", "feet"),
    ("tooth", "teeth"),
    ("mouse", "mice"),
    ("goose", "geese"),
    ("ox", "oxen"),
    ("sheep", "sheep"),
    ("fish", "fish"),
    ("deer", "deer"),
    ("people", "people"),
    ("knife", "knives"),
    ("wife", "wives"),
    ("life", "lives"),
    ("leaf", "leaves"),
    ("loaf", "loaves"),
    ("shelf", "shelves"),
    ("wolf", "wolves"),
    ("calf", "calves"),
    ("half", "halves"),
    ("potato", "potatoes"),
    ("tomato", "tomatoes"),
    ("hero", "heroes"),
];

/// Plural of a noun or noun phrase; only the last word inflects.
pub fn pluralize(noun: &str) -> String {
    if let Some((head, last)) = noun.rsplit_once(' ') {
        return format!("{head} {}", pluralize(last));
    }
    let lower = noun.to_lowercase();
    if let Some((_, p)) = IRREGULAR_PLURALS.iter().find(|(s, _)| *s == lower) {
        return match_case(noun, p);
    }
    if ends_consonant_y(&lower) {
        format!("{}ies", &noun[..noun.len() - 1])
    } else if sibilant_plural(&lower) {
        format!("{noun}es")
    } else {
        format!("{noun}s")
    }
}

fn match_case(model: &str, word: &str) -> String {
    if model.chars().next().is_some_and(char::is_uppercase) {
        capitalize_first(word)
    } else {
        word.to_owned()
    }
}

/// Heuristic for whether "an" should precede `word`.
pub fn starts_with_vowel_sound(word: &str) -> bool {
    let w = word.to_lowercase();
    const CONSONANT_SOUND: &[&str] = &["uni", "use", "usu", "uti", "eu", "one", "once", "ur", "ubi"];
    const VOWEL_SOUND: &[&str] = &["hour", "honest", "honor", "honour", "heir"];
    if VOWEL_SOUND.iter().any(|p| w.starts_with(p)) {
        return true;
    }
    if CONSONANT_SOUND.iter().any(|p| w.starts_with(p)) {
        return false;
    }
    w.chars().next().is_some_and(is_vowel)
}

/// "a" or "an" for the following word, keeping the case of `article`.
pub fn agree_article(article: &str, next_word: &str) -> Option<String> {
    let lower = article.to_lowercase();
    if lower != "a" && lower != "an" {
        return None;
    }
    let wanted = if starts_with_vowel_sound(next_word) { "an" } else { "a" };
    Some(match_case(article, wanted))
}

pub fn capitalize_first(s: &str) -> String {
    let mut chars = s.chars();
    match chars.next() {
        Some(c) => c.to_uppercase().chain(chars).collect(),
        None => String::new(),
    }
}

pub fn lowercase_first(s: &str) -> String {
    let mut chars = s.chars();
    match chars.next() {
        Some(c) => c.to_lowercase().chain(chars).collect(),
        None => String::new(),
    }
}
