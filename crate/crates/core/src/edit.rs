//! Token-level editing of a parsed sentence.
//!
//! A [`Draft`] starts as a copy of the premise tokens. Transforms delete,
//! replace and insert tokens; [`Draft::finish`] applies the casing policy
//! and yields both the hypothesis string and a parse of it, so a later
//! step in a composite can keep working without an external parser.

use std::collections::HashMap;

use crate::conllu::{detokenize, ParsedSentence, Token};
use crate::morph;

/// Casing and punctuation policy for a rendered hypothesis.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Surface {
    /// Token forms exactly as they are.
    Verbatim,
    /// Keep premise casing; an edited first word takes the premise's
    /// initial capitalization.
    Sentence,
    /// Lowercase the first word and drop final sentence punctuation.
    Plain,
}

#[derive(Clone, Debug)]
struct DraftToken {
    id: usize,
    form: String,
    lemma: String,
    upos: String,
    xpos: Option<String>,
    feats: Option<String>,
    head: usize,
    deprel: String,
    space_after: bool,
    edited: bool,
}

/// A token to be inserted.
#[derive(Clone, Debug)]
pub struct NewToken {
    pub form: String,
    pub lemma: String,
    pub upos: String,
    pub deprel: String,
}

impl NewToken {
    pub fn new(form: impl Into<String>, upos: &str, deprel: &str) -> Self {
        let form = form.into();
        NewToken {
            lemma: form.to_lowercase(),
            form,
            upos: upos.to_owned(),
            deprel: deprel.to_owned(),
        }
    }

    pub fn with_lemma(mut self, lemma: impl Into<String>) -> Self {
        self.lemma = lemma.into();
        self
    }
}

#[derive(Clone, Debug)]
pub struct Draft<'a> {
    source: &'a ParsedSentence,
    tokens: Vec<DraftToken>,
    /// Head of each removed token, for re-attaching its dependents.
    removed: HashMap<usize, usize>,
    next_id: usize,
}

impl<'a> Draft<'a> {
    pub fn new(source: &'a ParsedSentence) -> Self {
        let tokens = source
            .tokens
            .iter()
            .map(|t| DraftToken {
                id: t.index,
                form: t.form.clone(),
                lemma: t.lemma.clone(),
                upos: t.upos.clone(),
                xpos: t.xpos.clone(),
                feats: t.feats.clone(),
                head: t.head,
                deprel: t.deprel.clone(),
                space_after: t.space_after,
                edited: false,
            })
            .collect();
        Draft {
            source,
            tokens,
            removed: HashMap::new(),
            next_id: source.len() + 1,
        }
    }

    fn pos(&self, id: usize) -> Option<usize> {
        self.tokens.iter().position(|t| t.id == id)
    }

    pub fn contains(&self, id: usize) -> bool {
        self.pos(id).is_some()
    }

    pub fn form(&self, id: usize) -> Option<&str> {
        self.pos(id).map(|p| self.tokens[p].form.as_str())
    }

    pub fn remove(&mut self, id: usize) {
        if let Some(p) = self.pos(id) {
            let t = self.tokens.remove(p);
            self.removed.insert(t.id, t.head);
        }
    }

    pub fn remove_all<I: IntoIterator<Item = usize>>(&mut self, ids: I) {
        for id in ids {
            self.remove(id);
        }
    }

    /// Replaces the form and lemma of a token, leaving its attachment.
    pub fn replace(&mut self, id: usize, form: &str, lemma: &str) {
        if let Some(p) = self.pos(id) {
            let t = &mut self.tokens[p];
            t.form = form.to_owned();
            t.lemma = lemma.to_owned();
            t.edited = true;
        }
    }

    pub fn set_upos(&mut self, id: usize, upos: &str) {
        if let Some(p) = self.pos(id) {
            self.tokens[p].upos = upos.to_owned();
            self.tokens[p].xpos = None;
            self.tokens[p].feats = None;
        }
    }

    /// Replaces the contiguous tokens `ids` with `new`. The token at
    /// `top` in `new` takes over the attachment of the span's topmost
    /// token; the others attach to it. Returns the ids of the new tokens.
    pub fn replace_span(&mut self, ids: &[usize], new: Vec<NewToken>, top: usize) -> Vec<usize> {
        let Some(first) = ids.iter().filter_map(|&i| self.pos(i)).min() else {
            return Vec::new();
        };
        let in_span = |h: usize| ids.contains(&h);
        let span_top = ids
            .iter()
            .filter_map(|&i| self.pos(i).map(|p| &self.tokens[p]))
            .find(|t| !in_span(t.head))
            .map(|t| (t.head, t.deprel.clone()));
        let (top_head, top_rel) = span_top.unwrap_or((0, "root".to_owned()));
        let last_space = ids
            .iter()
            .filter_map(|&i| self.pos(i))
            .max()
            .map(|p| self.tokens[p].space_after)
            .unwrap_or(true);

        let new_ids: Vec<usize> = (0..new.len()).map(|k| self.next_id + k).collect();
        self.next_id += new.len();
        let top_id = new_ids[top];
        for &i in ids {
            if let Some(p) = self.pos(i) {
                self.tokens.remove(p);
            }
            self.removed.insert(i, top_id);
        }
        let count = new.len();
        for (k, nt) in new.into_iter().enumerate() {
            let (head, deprel) = if k == top {
                (top_head, top_rel.clone())
            } else {
                (top_id, nt.deprel.clone())
            };
            self.tokens.insert(
                first + k,
                DraftToken {
                    id: new_ids[k],
                    form: nt.form,
                    lemma: nt.lemma,
                    upos: nt.upos,
                    xpos: None,
                    feats: None,
                    head,
                    deprel,
                    space_after: if k + 1 == count { last_space } else { true },
                    edited: true,
                },
            );
        }
        new_ids
    }

    /// Inserts `new` tokens before (`after == false`) or after the token
    /// `anchor`, attached to `head`. Returns the new ids.
    pub fn insert(&mut self, anchor: usize, after: bool, head: usize, new: Vec<NewToken>) -> Vec<usize> {
        let Some(p) = self.pos(anchor) else {
            return Vec::new();
        };
        let start = if after { p + 1 } else { p };
        let mut ids = Vec::new();
        // Inserting after a token glued to its successor moves the glue.
        let glued = after && !self.tokens[p].space_after;
        if glued {
            self.tokens[p].space_after = true;
        }
        let count = new.len();
        for (k, nt) in new.into_iter().enumerate() {
            let id = self.next_id;
            self.next_id += 1;
            self.tokens.insert(
                start + k,
                DraftToken {
                    id,
                    form: nt.form,
                    lemma: nt.lemma,
                    upos: nt.upos,
                    xpos: None,
                    feats: None,
                    head,
                    deprel: nt.deprel,
                    space_after: !(glued && k + 1 == count),
                    edited: true,
                },
            );
            ids.push(id);
        }
        ids
    }

    /// Moves any "a"/"an" directly before an edited token into agreement
    /// with it.
    pub fn repair_articles(&mut self) {
        for p in 1..self.tokens.len() {
            if !self.tokens[p].edited {
                continue;
            }
            let next = self.tokens[p].form.clone();
            let prev = &mut self.tokens[p - 1];
            if let Some(fixed) = morph::agree_article(&prev.form, &next) {
                if fixed != prev.form {
                    prev.form = fixed;
                    prev.edited = true;
                }
            }
        }
    }

    /// Applies the surface policy and returns the hypothesis text with its
    /// parse. The parse keeps the source sentence id.
    pub fn finish(mut self, surface: Surface) -> (String, ParsedSentence) {
        match surface {
            Surface::Verbatim => {}
            Surface::Sentence => self.apply_sentence_case(),
            Surface::Plain => {
                while self.tokens.len() > 1
                    && self
                        .tokens
                        .last()
                        .is_some_and(|t| t.upos == "PUNCT" && matches!(t.form.as_str(), "." | "!" | "?"))
                {
                    let t = self.tokens.pop().unwrap();
                    self.removed.insert(t.id, t.head);
                }
                if let Some(first) = self.tokens.first_mut() {
                    if !keeps_capital(&first.upos, &first.form) {
                        first.form = morph::lowercase_first(&first.form);
                    }
                }
            }
        }
        let parse = self.to_parsed();
        (parse.text.clone(), parse)
    }

    fn apply_sentence_case(&mut self) {
        let Some(first) = self.tokens.first() else {
            return;
        };
        let original_first = &self.source.tokens[0];
        if first.id == original_first.index && !first.edited {
            return;
        }
        let premise_capital = original_first.form.chars().next().is_some_and(char::is_uppercase);
        if premise_capital {
            self.tokens[0].form = morph::capitalize_first(&self.tokens[0].form);
        }
        if let Some(p) = self.pos(original_first.index) {
            if p > 0 && !keeps_capital(&self.tokens[p].upos, &self.tokens[p].form) {
                self.tokens[p].form = morph::lowercase_first(&self.tokens[p].form);
            }
        }
    }

    fn resolve_head(&self, mut head: usize) -> usize {
        let mut guard = 0;
        while head != 0 && self.pos(head).is_none() {
            head = self.removed.get(&head).copied().unwrap_or(0);
            guard += 1;
            if guard > self.next_id {
                return 0;
            }
        }
        head
    }

    fn to_parsed(&self) -> ParsedSentence {
        let position: HashMap<usize, usize> = self.tokens.iter().enumerate().map(|(p, t)| (t.id, p + 1)).collect();
        let mut tokens: Vec<Token> = self
            .tokens
            .iter()
            .enumerate()
            .map(|(p, t)| {
                let head = self.resolve_head(t.head);
                Token {
                    index: p + 1,
                    form: t.form.clone(),
                    lemma: t.lemma.clone(),
                    upos: t.upos.clone(),
                    xpos: t.xpos.clone(),
                    feats: t.feats.clone(),
                    head: if head == 0 { 0 } else { position[&head] },
                    deprel: if head == 0 { "root".to_owned() } else { t.deprel.clone() },
                    misc: None,
                    space_after: t.space_after,
                }
            })
            .collect();
        // Extra roots can appear only if a root was deleted; hang them off
        // the first one.
        let roots: Vec<usize> = tokens.iter().filter(|t| t.head == 0).map(|t| t.index).collect();
        if roots.len() > 1 {
            for &r in &roots[1..] {
                tokens[r - 1].head = roots[0];
                tokens[r - 1].deprel = "dep".to_owned();
            }
        }
        let text = detokenize(&tokens);
        ParsedSentence {
            id: self.source.id.clone(),
            text,
            tokens,
        }
    }
}

fn keeps_capital(upos: &str, form: &str) -> bool {
    upos == "PROPN" || form == "I"
}
