//! CoNLL-U reading and writing.
//!
//! Sentences are read block by block. Multiword-token ranges (`1-2`) and
//! empty nodes (`1.1`) are skipped so token indices stay dense, and the
//! surface text is always rebuilt from the token forms and their
//! `SpaceAfter=No` flags.

use std::fmt::Write as _;
use std::io::{self, BufRead, Write};

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum ConlluError {
    #[error("{sent_id}, line {line}: expected 10 tab-separated columns, found {found}")]
    MalformedLine {
        sent_id: String,
        line: usize,
        found: usize,
    },
    #[error("{sent_id}, line {line}: cannot parse {column} value {value:?}")]
    BadField {
        sent_id: String,
        line: usize,
        column: &'static str,
        value: String,
    },
    #[error("{sent_id}, line {line}: head links form a cycle")]
    CyclicTree { sent_id: String, line: usize },
    #[error("{sent_id}, line {line}: more than one token attaches to the root")]
    MultipleRoots { sent_id: String, line: usize },
    #[error("{sent_id}, line {line}: no token attaches to the root")]
    MissingRoot { sent_id: String, line: usize },
    #[error("{sent_id}, line {line}: expected token index {expected}, found {found}")]
    IndexGap {
        sent_id: String,
        line: usize,
        expected: usize,
        found: usize,
    },
    #[error("{sent_id}, line {line}: head {head} is outside the sentence")]
    HeadOutOfRange {
        sent_id: String,
        line: usize,
        head: usize,
    },
    #[error("read error: {0}")]
    Io(#[from] io::Error),
}

impl ConlluError {
    pub fn sent_id(&self) -> Option<&str> {
        match self {
            ConlluError::MalformedLine { sent_id, .. }
            | ConlluError::BadField { sent_id, .. }
            | ConlluError::CyclicTree { sent_id, .. }
            | ConlluError::MultipleRoots { sent_id, .. }
            | ConlluError::MissingRoot { sent_id, .. }
            | ConlluError::IndexGap { sent_id, .. }
            | ConlluError::HeadOutOfRange { sent_id, .. } => Some(sent_id),
            ConlluError::Io(_) => None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Token {
    /// 1-based position in the sentence.
    pub index: usize,
    pub form: String,
    pub lemma: String,
    pub upos: String,
    pub xpos: Option<String>,
    pub feats: Option<String>,
    /// Index of the head token, 0 for the root.
    pub head: usize,
    pub deprel: String,
    /// MISC column without the `SpaceAfter` entry.
    pub misc: Option<String>,
    pub space_after: bool,
}

impl Token {
    /// Looks up a morphological feature such as `Number` or `Tense`.
    pub fn feat(&self, name: &str) -> Option<&str> {
        self.feats.as_deref()?.split('|').find_map(|kv| {
            let (k, v) = kv.split_once('=')?;
            (k == name).then_some(v)
        })
    }

    /// Lowercased lemma, falling back to the form when the lemma is missing.
    pub fn lemma_key(&self) -> String {
        if self.lemma.is_empty() || self.lemma == "_" {
            self.form.to_lowercase()
        } else {
            self.lemma.to_lowercase()
        }
    }

    /// Relation without its subtype, e.g. `obl` for `obl:tmod`.
    pub fn base_rel(&self) -> &str {
        self.deprel.split(':').next().unwrap_or("")
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ParsedSentence {
    pub id: String,
    pub text: String,
    pub tokens: Vec<Token>,
}

impl ParsedSentence {
    /// Builds a sentence from tokens, deriving the text by detokenization.
    pub fn from_tokens(id: impl Into<String>, tokens: Vec<Token>) -> Self {
        let text = detokenize(&tokens);
        ParsedSentence {
            id: id.into(),
            text,
            tokens,
        }
    }

    pub fn len(&self) -> usize {
        self.tokens.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tokens.is_empty()
    }

    /// Token by 1-based index.
    pub fn token(&self, index: usize) -> &Token {
        &self.tokens[index - 1]
    }

    pub fn root(&self) -> Option<usize> {
        self.tokens.iter().find(|t| t.head == 0).map(|t| t.index)
    }

    /// Direct dependents of `index` in surface order.
    pub fn children(&self, index: usize) -> impl Iterator<Item = &Token> + '_ {
        self.tokens.iter().filter(move |t| t.head == index)
    }

    pub fn has_children(&self, index: usize) -> bool {
        self.tokens.iter().any(|t| t.head == index)
    }

    /// Transitive closure of the dependents of `root_index`, inclusive, in
    /// surface order.
    pub fn subtree_tokens(&self, root_index: usize) -> Vec<usize> {
        let mut inside = vec![false; self.tokens.len() + 1];
        inside[root_index] = true;
        // Heads may point forward, so iterate to a fixpoint.
        let mut changed = true;
        while changed {
            changed = false;
            for t in &self.tokens {
                if !inside[t.index] && t.head != 0 && inside[t.head] {
                    inside[t.index] = true;
                    changed = true;
                }
            }
        }
        (1..=self.tokens.len()).filter(|&i| inside[i]).collect()
    }

    /// Head chain of `index`, nearest first, excluding `index` itself.
    pub fn ancestors(&self, index: usize) -> Vec<usize> {
        let mut out = Vec::new();
        let mut cur = self.token(index).head;
        while cur != 0 && out.len() <= self.tokens.len() {
            out.push(cur);
            cur = self.token(cur).head;
        }
        out
    }

    /// Number of head links between `index` and the root.
    pub fn depth(&self, index: usize) -> usize {
        self.ancestors(index).len()
    }

    /// Serializes the sentence as one CoNLL-U block, including the trailing
    /// blank line.
    pub fn to_conllu(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "# sent_id = {}", self.id);
        let _ = writeln!(out, "# text = {}", self.text);
        for t in &self.tokens {
            let mut misc: Vec<&str> = Vec::new();
            if !t.space_after {
                misc.push("SpaceAfter=No");
            }
            if let Some(m) = t.misc.as_deref() {
                misc.push(m);
            }
            let misc = if misc.is_empty() {
                "_".to_owned()
            } else {
                misc.join("|")
            };
            let _ = writeln!(
                out,
                "{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}\t_\t{}",
                t.index,
                t.form,
                or_underscore(&t.lemma),
                or_underscore(&t.upos),
                t.xpos.as_deref().unwrap_or("_"),
                t.feats.as_deref().unwrap_or("_"),
                t.head,
                t.deprel,
                misc
            );
        }
        out.push('\n');
        out
    }
}

fn or_underscore(s: &str) -> &str {
    if s.is_empty() {
        "_"
    } else {
        s
    }
}

/// Joins token forms, inserting a single space after every token except
/// those flagged `SpaceAfter=No` and the last one.
pub fn detokenize(tokens: &[Token]) -> String {
    let mut out = String::new();
    for (i, t) in tokens.iter().enumerate() {
        out.push_str(&t.form);
        if t.space_after && i + 1 < tokens.len() {
            out.push(' ');
        }
    }
    out
}

#[derive(Clone, Debug, Default)]
pub struct ParseOptions {
    /// Abort on the first bad block instead of dropping it.
    pub strict: bool,
    /// Used to synthesize `<source>:<ordinal>` ids for blocks without
    /// `# sent_id`.
    pub source: String,
}

impl ParseOptions {
    pub fn lenient(source: impl Into<String>) -> Self {
        ParseOptions {
            strict: false,
            source: source.into(),
        }
    }

    pub fn strict(source: impl Into<String>) -> Self {
        ParseOptions {
            strict: true,
            source: source.into(),
        }
    }
}

#[derive(Debug, Default)]
pub struct ParseOutput {
    pub sentences: Vec<ParsedSentence>,
    /// Blocks dropped in lenient mode.
    pub dropped: Vec<ConlluError>,
}

struct Block {
    sent_id: Option<String>,
    start_line: usize,
    lines: Vec<(usize, String)>,
}

/// Parses a CoNLL-U stream.
///
/// In strict mode the first invalid block is returned as an error; in
/// lenient mode it is recorded in [`ParseOutput::dropped`] and parsing
/// continues.
pub fn parse_conllu<R: BufRead>(reader: R, opts: &ParseOptions) -> Result<ParseOutput, ConlluError> {
    let mut out = ParseOutput::default();
    let mut block: Option<Block> = None;
    let mut ordinal = 0usize;

    let finish = |block: Block, out: &mut ParseOutput, ordinal: &mut usize| -> Result<(), ConlluError> {
        *ordinal += 1;
        match build_sentence(block, *ordinal, &opts.source) {
            Ok(Some(s)) => out.sentences.push(s),
            Ok(None) => {}
            Err(e) if opts.strict => return Err(e),
            Err(e) => {
                log::warn!("dropping sentence: {e}");
                out.dropped.push(e);
            }
        }
        Ok(())
    };

    for (n, line) in reader.lines().enumerate() {
        let line = line?;
        let line_no = n + 1;
        let trimmed = line.trim_end_matches(['\r', '\n']);
        if trimmed.trim().is_empty() {
            if let Some(b) = block.take() {
                finish(b, &mut out, &mut ordinal)?;
            }
            continue;
        }
        let b = block.get_or_insert_with(|| Block {
            sent_id: None,
            start_line: line_no,
            lines: Vec::new(),
        });
        if let Some(comment) = trimmed.strip_prefix('#') {
            if let Some((key, value)) = comment.split_once('=') {
                if key.trim() == "sent_id" {
                    b.sent_id = Some(value.trim().to_owned());
                }
            }
            continue;
        }
        b.lines.push((line_no, trimmed.to_owned()));
    }
    if let Some(b) = block.take() {
        finish(b, &mut out, &mut ordinal)?;
    }
    Ok(out)
}

/// Parses CoNLL-U from an in-memory string in lenient mode.
pub fn parse_str(input: &str, source: &str) -> Result<ParseOutput, ConlluError> {
    parse_conllu(input.as_bytes(), &ParseOptions::lenient(source))
}

fn build_sentence(block: Block, ordinal: usize, source: &str) -> Result<Option<ParsedSentence>, ConlluError> {
    let sent_id = block
        .sent_id
        .clone()
        .unwrap_or_else(|| format!("{source}:{ordinal}"));
    if block.lines.is_empty() {
        // A comment-only block carries no sentence.
        return Ok(None);
    }

    let mut tokens: Vec<Token> = Vec::new();
    let mut token_lines: Vec<usize> = Vec::new();
    for (line, text) in &block.lines {
        let cols: Vec<&str> = text.split('\t').collect();
        if cols.len() != 10 {
            return Err(ConlluError::MalformedLine {
                sent_id,
                line: *line,
                found: cols.len(),
            });
        }
        let id = cols[0];
        if id.contains('-') || id.contains('.') {
            continue;
        }
        let index: usize = id.parse().map_err(|_| ConlluError::BadField {
            sent_id: sent_id.clone(),
            line: *line,
            column: "ID",
            value: id.to_owned(),
        })?;
        let expected = tokens.len() + 1;
        if index != expected {
            return Err(ConlluError::IndexGap {
                sent_id,
                line: *line,
                expected,
                found: index,
            });
        }
        let head: usize = cols[6].parse().map_err(|_| ConlluError::BadField {
            sent_id: sent_id.clone(),
            line: *line,
            column: "HEAD",
            value: cols[6].to_owned(),
        })?;
        let mut space_after = true;
        let misc: Vec<&str> = cols[9]
            .split('|')
            .filter(|kv| {
                if *kv == "SpaceAfter=No" {
                    space_after = false;
                    false
                } else {
                    *kv != "_" && !kv.is_empty()
                }
            })
            .collect();
        tokens.push(Token {
            index,
            form: cols[1].to_owned(),
            lemma: cols[2].to_owned(),
            upos: cols[3].to_owned(),
            xpos: optional(cols[4]),
            feats: optional(cols[5]),
            head,
            deprel: cols[7].to_owned(),
            misc: if misc.is_empty() { None } else { Some(misc.join("|")) },
            space_after,
        });
        token_lines.push(*line);
    }
    if tokens.is_empty() {
        return Ok(None);
    }

    validate_tree(&sent_id, &tokens, &token_lines, block.start_line)?;
    Ok(Some(ParsedSentence::from_tokens(sent_id, tokens)))
}

fn optional(col: &str) -> Option<String> {
    (col != "_" && !col.is_empty()).then(|| col.to_owned())
}

fn validate_tree(sent_id: &str, tokens: &[Token], lines: &[usize], start_line: usize) -> Result<(), ConlluError> {
    let n = tokens.len();
    let mut roots = 0;
    for (t, &line) in tokens.iter().zip(lines) {
        if t.head > n {
            return Err(ConlluError::HeadOutOfRange {
                sent_id: sent_id.to_owned(),
                line,
                head: t.head,
            });
        }
        if t.head == 0 {
            roots += 1;
            if roots > 1 {
                return Err(ConlluError::MultipleRoots {
                    sent_id: sent_id.to_owned(),
                    line,
                });
            }
        }
    }
    // A head chain longer than the sentence must revisit a token.
    for (t, &line) in tokens.iter().zip(lines) {
        let mut cur = t.head;
        let mut steps = 0;
        while cur != 0 {
            if cur == t.index || steps > n {
                return Err(ConlluError::CyclicTree {
                    sent_id: sent_id.to_owned(),
                    line,
                });
            }
            cur = tokens[cur - 1].head;
            steps += 1;
        }
    }
    if roots == 0 {
        return Err(ConlluError::MissingRoot {
            sent_id: sent_id.to_owned(),
            line: start_line,
        });
    }
    Ok(())
}

/// Writes sentences as CoNLL-U blocks.
pub fn write_conllu<W: Write>(mut w: W, sentences: &[ParsedSentence]) -> io::Result<()> {
    for s in sentences {
        w.write_all(s.to_conllu().as_bytes())?;
    }
    Ok(())
}
