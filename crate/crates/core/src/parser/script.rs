//! Tokenizer and parser for the Coq/SSReflect proof-script subset:
//! `Lemma name : statement. Proof. sentence* Qed.`

use std::collections::HashSet;

use crate::error::{ParseError, Pos};
use crate::model::{Arg, ArgKind, TacticApp};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Keyword {
    Lemma,
    Proof,
    Qed,
    Admitted,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TokenKind {
    Keyword(Keyword),
    Ident,
    Colon,
    Dot,
    Semicolon,
    /// `=>` directly after `move`.
    ArrowIntro,
    /// `:` directly after `move`.
    MoveColon,
    /// `/` directly after `move`.
    Slash,
    StatementText,
    TacticText,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Token {
    pub kind: TokenKind,
    pub text: String,
    pub pos: Pos,
}

struct Lexer<'a> {
    src: &'a str,
    offset: usize,
    line: usize,
    col: usize,
    tokens: Vec<Token>,
}

impl<'a> Lexer<'a> {
    fn rest(&self) -> &'a str {
        &self.src[self.offset..]
    }

    fn pos(&self) -> Pos {
        Pos {
            line: self.line,
            col: self.col,
        }
    }

    fn advance(&mut self, n_bytes: usize) {
        for c in self.src[self.offset..self.offset + n_bytes].chars() {
            if c == '\n' {
                self.line += 1;
                self.col = 1;
            } else {
                self.col += 1;
            }
        }
        self.offset += n_bytes;
    }

    /// Skip whitespace and `(* ... *)` comments (nested).
    fn skip_trivia(&mut self) {
        loop {
            let r = self.rest();
            let ws = r.len() - r.trim_start().len();
            if ws > 0 {
                self.advance(ws);
                continue;
            }
            if r.starts_with("(*") {
                let mut depth = 0usize;
                let mut i = 0;
                let b = r.as_bytes();
                while i < b.len() {
                    if b[i..].starts_with(b"(*") {
                        depth += 1;
                        i += 2;
                    } else if b[i..].starts_with(b"*)") {
                        depth -= 1;
                        i += 2;
                        if depth == 0 {
                            break;
                        }
                    } else {
                        i += 1;
                    }
                }
                self.advance(i.min(r.len()));
                continue;
            }
            break;
        }
    }

    fn push(&mut self, kind: TokenKind, len: usize) {
        let pos = self.pos();
        let text = self.src[self.offset..self.offset + len].to_string();
        self.tokens.push(Token { kind, text, pos });
        self.advance(len);
    }

    /// Byte length of the leading identifier of `rest`.
    fn ident_len(&self) -> usize {
        self.rest()
            .char_indices()
            .find(|&(_, c)| !(c.is_alphanumeric() || c == '_' || c == '\''))
            .map(|(i, _)| i)
            .unwrap_or(self.rest().len())
    }

    /// Does the text at `i` start with a sentence-terminating dot?
    fn is_terminator(s: &str, i: usize) -> bool {
        s.as_bytes()[i] == b'.'
            && s[i + 1..]
                .chars()
                .next()
                .is_none_or(|c| c.is_whitespace())
    }

    /// Byte length up to (excluding) the sentence-terminating dot, if any.
    fn sentence_len(&self) -> Option<usize> {
        let r = self.rest();
        (0..r.len()).find(|&i| r.is_char_boundary(i) && Self::is_terminator(r, i))
    }

    /// Emit a non-empty run of text, trimmed, as one token.
    fn push_trimmed(&mut self, kind: TokenKind, len: usize) {
        let chunk = &self.rest()[..len];
        let lead = chunk.len() - chunk.trim_start().len();
        let body = chunk.trim().len();
        self.advance(lead);
        if body > 0 {
            self.push(kind, body);
        }
        let trail = len - lead - body;
        self.advance(trail);
    }

    fn keyword_sentence(&self, word: &str) -> bool {
        let r = self.rest();
        r.starts_with(word) && r[word.len()..].trim_start().starts_with('.') && {
            let after = r[word.len()..].trim_start();
            after.len() == 1 || after[1..].starts_with(char::is_whitespace)
        }
    }

    fn top_level(&mut self) -> Result<(), ParseError> {
        while {
            self.skip_trivia();
            !self.rest().is_empty()
        } {
            let word = self.ident_len();
            let w = &self.rest()[..word];
            match w {
                "Lemma" | "Theorem" | "Remark" | "Fact" | "Corollary" => {
                    self.push(TokenKind::Keyword(Keyword::Lemma), word);
                    self.skip_trivia();
                    let n = self.ident_len();
                    if n > 0 {
                        self.push(TokenKind::Ident, n);
                    }
                    self.skip_trivia();
                    if self.rest().starts_with(':') {
                        self.push(TokenKind::Colon, 1);
                    }
                    self.statement()?;
                }
                "Proof" if self.keyword_sentence("Proof") => {
                    let start = self.pos();
                    self.push(TokenKind::Keyword(Keyword::Proof), word);
                    self.skip_trivia();
                    self.push(TokenKind::Dot, 1);
                    self.proof_body(start)?;
                }
                _ => {
                    // other vernacular: command word + text, skipped by the parser
                    if word > 0 {
                        self.push(TokenKind::Ident, word);
                    }
                    self.statement()?;
                }
            }
        }
        Ok(())
    }

    fn statement(&mut self) -> Result<(), ParseError> {
        match self.sentence_len() {
            Some(len) => {
                self.push_trimmed(TokenKind::StatementText, len);
                self.push(TokenKind::Dot, 1);
                Ok(())
            }
            None => Err(ParseError::Unexpected {
                pos: self.pos(),
                expected: "`.` ending the sentence".into(),
                found: "end of input".into(),
            }),
        }
    }

    fn proof_body(&mut self, start: Pos) -> Result<(), ParseError> {
        loop {
            self.skip_trivia();
            if self.rest().is_empty() {
                return Err(ParseError::UnterminatedProof { pos: start });
            }
            for (word, kw) in [("Qed", Keyword::Qed), ("Admitted", Keyword::Admitted), ("Defined", Keyword::Qed)] {
                if self.keyword_sentence(word) {
                    self.push(TokenKind::Keyword(kw), word.len());
                    self.skip_trivia();
                    self.push(TokenKind::Dot, 1);
                    return Ok(());
                }
            }
            let Some(len) = self.sentence_len() else {
                return Err(ParseError::UnterminatedProof { pos: start });
            };
            let sentence_end = self.offset + len;
            while self.offset < sentence_end {
                let r = &self.src[self.offset..sentence_end];
                let chunk = r.find(';').unwrap_or(r.len());
                self.tactic_chunk(chunk);
                if self.offset < sentence_end {
                    self.push(TokenKind::Semicolon, 1);
                }
            }
            self.push(TokenKind::Dot, 1);
        }
    }

    /// One `;`-separated tactic. `move` followed by `=>`, `:` or `/` is
    /// split so the operator gets its own token.
    fn tactic_chunk(&mut self, len: usize) {
        let chunk = &self.rest()[..len];
        let trimmed = chunk.trim_start();
        let lead = chunk.len() - trimmed.len();
        let head_end = if let Some(r) = trimmed.strip_prefix("by ") {
            let r2 = r.trim_start();
            (trimmed.len() - r2.len(), r2)
        } else {
            (0, trimmed)
        };
        let (prefix, body) = head_end;
        if let Some(after_move) = body.strip_prefix("move") {
            let gap = after_move.len() - after_move.trim_start().len();
            let after = after_move.trim_start();
            let op = if after.starts_with("=>") {
                Some((TokenKind::ArrowIntro, 2))
            } else if after.starts_with(':') && !after.starts_with(":=") {
                Some((TokenKind::MoveColon, 1))
            } else if after.starts_with('/') {
                Some((TokenKind::Slash, 1))
            } else {
                None
            };
            if let Some((kind, op_len)) = op {
                let head = lead + prefix + "move".len();
                self.push_trimmed(TokenKind::TacticText, head);
                self.advance(gap);
                self.push(kind, op_len);
                let rest = len - head - gap - op_len;
                self.push_trimmed(TokenKind::TacticText, rest);
                return;
            }
        }
        self.push_trimmed(TokenKind::TacticText, len);
    }
}

/// Split proof-script source into tokens.
pub fn tokenize(source: &str) -> Result<Vec<Token>, ParseError> {
    let mut lx = Lexer {
        src: source,
        offset: 0,
        line: 1,
        col: 1,
        tokens: Vec::new(),
    };
    lx.top_level()?;
    Ok(lx.tokens)
}

/// A `.`-terminated tactic sentence.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Sentence {
    pub text: String,
    pub tactics: Vec<TacticApp>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ScriptWarning {
    /// `Proof. Qed.` with nothing in between.
    EmptyDerivation,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ScriptProof {
    pub lemma_name: String,
    pub statement: String,
    pub sentences: Vec<Sentence>,
    /// Ended in `Qed` rather than `Admitted`.
    pub complete: bool,
    pub pos: Pos,
    pub warnings: Vec<ScriptWarning>,
}

impl ScriptProof {
    /// The proof as source text, one sentence per line.
    pub fn render(&self) -> String {
        let mut s = String::new();
        for sent in &self.sentences {
            s.push_str(&sent.text);
            s.push_str(".\n");
        }
        s.push_str(if self.complete { "Qed." } else { "Admitted." });
        s
    }
}

struct TokenStream {
    tokens: Vec<Token>,
    at: usize,
}

impl TokenStream {
    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.at)
    }

    fn next(&mut self) -> Option<Token> {
        let t = self.tokens.get(self.at).cloned();
        self.at += 1;
        t
    }

    fn last_pos(&self) -> Pos {
        self.tokens.last().map(|t| t.pos).unwrap_or_default()
    }

    fn expect(&mut self, kind: TokenKind, what: &str) -> Result<Token, ParseError> {
        match self.next() {
            Some(t) if t.kind == kind => Ok(t),
            Some(t) => Err(ParseError::Unexpected {
                pos: t.pos,
                expected: what.into(),
                found: format!("{:?}", t.text),
            }),
            None => Err(ParseError::Unexpected {
                pos: self.last_pos(),
                expected: what.into(),
                found: "end of input".into(),
            }),
        }
    }
}

/// Parse every `Lemma ... Proof. ... Qed.` block of a script.
pub fn parse_script(source: &str) -> Result<Vec<ScriptProof>, ParseError> {
    let mut ts = TokenStream {
        tokens: tokenize(source)?,
        at: 0,
    };
    let mut out = Vec::new();
    while let Some(tok) = ts.next() {
        match tok.kind {
            TokenKind::Keyword(Keyword::Lemma) => out.push(parse_lemma(&mut ts, tok.pos)?),
            TokenKind::Keyword(Keyword::Proof) => {
                return Err(ParseError::Unexpected {
                    pos: tok.pos,
                    expected: "a Lemma before Proof".into(),
                    found: "Proof".into(),
                })
            }
            // other vernacular sentences
            _ => {
                while let Some(t) = ts.next() {
                    if t.kind == TokenKind::Dot {
                        break;
                    }
                }
            }
        }
    }
    Ok(out)
}

fn parse_lemma(ts: &mut TokenStream, pos: Pos) -> Result<ScriptProof, ParseError> {
    let name = ts.expect(TokenKind::Ident, "lemma name")?.text;
    if ts.peek().map(|t| t.kind) != Some(TokenKind::Colon) {
        return Err(ParseError::MissingStatement { pos, lemma: name });
    }
    ts.next();
    let statement = ts.expect(TokenKind::StatementText, "statement")?.text;
    ts.expect(TokenKind::Dot, "`.` after the statement")?;
    ts.expect(TokenKind::Keyword(Keyword::Proof), "Proof")?;
    ts.expect(TokenKind::Dot, "`.` after Proof")?;

    let mut bound = HashSet::new();
    let mut sentences = Vec::new();
    let mut chunk: Vec<Token> = Vec::new();
    let mut tactics = Vec::new();
    let mut text = String::new();
    let complete = loop {
        let tok = ts.next().ok_or(ParseError::UnterminatedProof { pos })?;
        match tok.kind {
            TokenKind::Keyword(Keyword::Qed) => break true,
            TokenKind::Keyword(Keyword::Admitted) => break false,
            TokenKind::Semicolon | TokenKind::Dot => {
                if chunk.is_empty() {
                    return Err(ParseError::Unexpected {
                        pos: tok.pos,
                        expected: "a tactic".into(),
                        found: format!("{:?}", tok.text),
                    });
                }
                let piece = join_chunk(&chunk);
                tactics.push(parse_tactic(&piece, &mut bound));
                if !text.is_empty() {
                    text.push_str("; ");
                }
                text.push_str(&piece);
                chunk.clear();
                if tok.kind == TokenKind::Dot {
                    sentences.push(Sentence {
                        text: std::mem::take(&mut text),
                        tactics: std::mem::take(&mut tactics),
                    });
                }
            }
            TokenKind::TacticText
            | TokenKind::ArrowIntro
            | TokenKind::MoveColon
            | TokenKind::Slash => chunk.push(tok),
            _ => {
                return Err(ParseError::Unexpected {
                    pos: tok.pos,
                    expected: "a tactic sentence or Qed".into(),
                    found: format!("{:?}", tok.text),
                })
            }
        }
    };
    ts.expect(TokenKind::Dot, "`.` after Qed")?;
    let warnings = if sentences.is_empty() {
        vec![ScriptWarning::EmptyDerivation]
    } else {
        Vec::new()
    };
    Ok(ScriptProof {
        lemma_name: name,
        statement,
        sentences,
        complete,
        pos,
        warnings,
    })
}

fn join_chunk(chunk: &[Token]) -> String {
    let mut s = String::new();
    for t in chunk {
        match t.kind {
            TokenKind::Slash => s.push('/'),
            TokenKind::ArrowIntro | TokenKind::MoveColon => {
                s.push(' ');
                s.push_str(&t.text);
            }
            _ => {
                if !s.is_empty() && !s.ends_with('/') {
                    s.push(' ');
                }
                s.push_str(&t.text);
            }
        }
    }
    s
}

const INTRO_TACTICS: [&str; 3] = ["intro", "intros", "move =>"];

/// Split a single tactic into its head name and classified arguments.
/// Names bound by intro forms are recorded in `bound`.
pub fn parse_tactic(text: &str, bound: &mut HashSet<String>) -> TacticApp {
    // focusing bullets carry no tactic information
    let mut t = text.trim().trim_start_matches(|c: char| "-+*".contains(c)).trim_start();
    if let Some(r) = t.strip_prefix("by ") {
        t = r.trim_start();
    }
    let head_len = t
        .find(|c: char| !(c.is_alphanumeric() || c == '_' || c == '\''))
        .unwrap_or(t.len());
    let (head, mut rest) = t.split_at(head_len);
    let mut name = head.to_string();
    if head == "move" {
        let r = rest.trim_start();
        if let Some(r) = r.strip_prefix("=>") {
            name = "move =>".into();
            rest = r;
        } else if let Some(r) = r.strip_prefix(':') {
            name = "move :".into();
            rest = r;
        } else if let Some(r) = r.strip_prefix('/') {
            name = "move/".into();
            rest = r;
        }
    } else if let Some(r) = rest.trim_start().strip_prefix(':') {
        // SSReflect discharge form, e.g. `elim : n`
        if !r.starts_with('=') {
            rest = r;
        }
    }

    let (plain, binders) = match rest.find("=>") {
        Some(i) => (&rest[..i], &rest[i + 2..]),
        None => (rest, ""),
    };
    let (plain, binders) = if INTRO_TACTICS.contains(&name.as_str()) {
        ("", rest)
    } else {
        (plain, binders)
    };

    let mut args = Vec::new();
    for word in arg_words(plain) {
        let kind = if word.starts_with("IH") {
            ArgKind::Ih
        } else if bound.contains(&word) {
            ArgKind::Hyp
        } else if name == "rewrite" {
            ArgKind::ExternalLemma(word)
        } else {
            ArgKind::None
        };
        args.push(Arg::untyped(kind));
    }
    for word in arg_words(binders) {
        bound.insert(word);
        args.push(Arg::untyped(ArgKind::None));
    }
    TacticApp::new(name, args)
}

/// Bare argument names: rewrite modifiers (`-`, `!`, `?`, `//`, `/=`,
/// occurrence patterns `-[...]`) and intro-pattern punctuation removed.
fn arg_words(s: &str) -> Vec<String> {
    // drop bracketed patterns glued to a following identifier: -[n.+1]addn1
    let mut cleaned = String::with_capacity(s.len());
    let chars: Vec<char> = s.chars().collect();
    let mut i = 0;
    while i < chars.len() {
        if chars[i] == '[' {
            let mut depth = 0;
            let mut j = i;
            while j < chars.len() {
                match chars[j] {
                    '[' => depth += 1,
                    ']' => {
                        depth -= 1;
                        if depth == 0 {
                            break;
                        }
                    }
                    _ => {}
                }
                j += 1;
            }
            let glued = chars
                .get(j + 1)
                .is_some_and(|c| c.is_alphanumeric() || *c == '_');
            if glued {
                i = j + 1;
                continue;
            }
        }
        cleaned.push(chars[i]);
        i += 1;
    }
    cleaned
        .split(|c: char| c.is_whitespace() || "[]|(),{}".contains(c))
        .filter_map(|w| {
            let w = w.trim_start_matches(|c: char| "-!?/".contains(c));
            let w = strip_multiplicity(w);
            let w = w.trim_end_matches(|c: char| "/=".contains(c));
            let ok = w
                .chars()
                .next()
                .is_some_and(|c| c.is_alphabetic() || c == '_')
                && w != "_"
                && w != "in";
            ok.then(|| w.to_string())
        })
        .collect()
}

/// `2!lemma` / `3?lemma` repeat counts.
fn strip_multiplicity(w: &str) -> &str {
    let digits = w.len() - w.trim_start_matches(|c: char| c.is_ascii_digit()).len();
    if digits > 0 {
        let r = &w[digits..];
        if let Some(r) = r.strip_prefix('!').or_else(|| r.strip_prefix('?')) {
            return r;
        }
    }
    w
}

#[cfg(test)]
mod tests {
    use super::*;

    fn kinds(t: &TacticApp) -> Vec<TokenKindLite> {
        t.args.iter().map(|a| TokenKindLite::from(&a.kind)).collect()
    }

    #[derive(Debug, PartialEq)]
    enum TokenKindLite {
        None,
        Hyp,
        Ih,
        Lemma(String),
    }

    impl From<&ArgKind> for TokenKindLite {
        fn from(k: &ArgKind) -> Self {
            match k {
                ArgKind::None => TokenKindLite::None,
                ArgKind::Hyp => TokenKindLite::Hyp,
                ArgKind::Ih => TokenKindLite::Ih,
                ArgKind::ExternalLemma(l) => TokenKindLite::Lemma(l.clone()),
            }
        }
    }

    fn kinds_of(tokens: &[Token]) -> Vec<(TokenKind, &str)> {
        tokens.iter().map(|t| (t.kind, t.text.as_str())).collect()
    }

    #[test]
    fn minimal_proof_block() {
        let toks = tokenize("Proof. intro l. Qed.").unwrap();
        assert_eq!(
            kinds_of(&toks),
            vec![
                (TokenKind::Keyword(Keyword::Proof), "Proof"),
                (TokenKind::Dot, "."),
                (TokenKind::TacticText, "intro l"),
                (TokenKind::Dot, "."),
                (TokenKind::Keyword(Keyword::Qed), "Qed"),
                (TokenKind::Dot, "."),
            ]
        );
    }

    #[test]
    fn chained_tactics() {
        let toks = tokenize("Proof. simpl;trivial. Qed.").unwrap();
        let body: Vec<_> = kinds_of(&toks)[2..6].to_vec();
        assert_eq!(
            body,
            vec![
                (TokenKind::TacticText, "simpl"),
                (TokenKind::Semicolon, ";"),
                (TokenKind::TacticText, "trivial"),
                (TokenKind::Dot, "."),
            ]
        );
    }

    #[test]
    fn empty_input() {
        assert!(tokenize("").unwrap().is_empty());
        assert!(parse_script("  (* nothing *) ").unwrap().is_empty());
    }

    #[test]
    fn unterminated_proof_reports_position() {
        let err = tokenize("Lemma a : True.\nProof.\n  trivial.\n").unwrap_err();
        match err {
            ParseError::UnterminatedProof { pos } => assert_eq!(pos, Pos { line: 2, col: 1 }),
            e => panic!("unexpected {e}"),
        }
    }

    #[test]
    fn move_forms_get_operator_tokens() {
        let toks = tokenize("Proof. move => n IH. move/andP => [_ H2]; move : H2. Qed.").unwrap();
        let ks: Vec<_> = toks.iter().map(|t| t.kind).collect();
        assert!(ks.contains(&TokenKind::ArrowIntro));
        assert!(ks.contains(&TokenKind::Slash));
        assert!(ks.contains(&TokenKind::MoveColon));
    }

    #[test]
    fn token_text_reconstructs_source() {
        let src = "Lemma fact_prod : forall n, \\prod_(1 <= i < n.+1) i = n`!.\nProof.\nelim : n.\n  by rewrite big_nil.\nmove => n IH.\nby rewrite factS big_add1 -IH big_add1 big_nat_recr mulnC.\nQed.\n";
        let toks = tokenize(src).unwrap();
        let joined: String = toks.iter().map(|t| t.text.as_str()).collect();
        let strip = |s: &str| s.chars().filter(|c| !c.is_whitespace()).collect::<String>();
        assert_eq!(strip(&joined), strip(src));
    }

    #[test]
    fn app_nil_l_script() {
        let src = "Lemma app_nil_l : forall l : list A, [] ++ l = l.\nProof.\nintro l.\nsimpl;trivial.\nQed.";
        let proofs = parse_script(src).unwrap();
        assert_eq!(proofs.len(), 1);
        let p = &proofs[0];
        assert_eq!(p.lemma_name, "app_nil_l");
        assert_eq!(p.statement, "forall l : list A, [] ++ l = l");
        let names: Vec<Vec<(&str, usize)>> = p
            .sentences
            .iter()
            .map(|s| s.tactics.iter().map(|t| (t.name.as_str(), t.args.len())).collect())
            .collect();
        assert_eq!(names, vec![vec![("intro", 1)], vec![("simpl", 0), ("trivial", 0)]]);
        assert!(p.complete);
    }

    #[test]
    fn fact_prod_script() {
        let src = "Lemma fact_prod : forall n, \\prod_(1 <= i < n.+1) i = n`!.
Proof.
elim : n.
  by rewrite big_nil.
move => n IH.
by rewrite factS big_add1 -IH big_add1 big_nat_recr mulnC.
Qed.";
        let p = &parse_script(src).unwrap()[0];
        let s = &p.sentences;
        assert_eq!(s.len(), 4);
        assert_eq!(s[0].tactics[0].name, "elim");
        assert_eq!(kinds(&s[0].tactics[0]), vec![TokenKindLite::None]);
        assert_eq!(s[1].tactics[0].name, "rewrite");
        assert_eq!(
            kinds(&s[1].tactics[0]),
            vec![TokenKindLite::Lemma("big_nil".into())]
        );
        assert_eq!(s[2].tactics[0].name, "move =>");
        assert_eq!(s[2].tactics[0].args.len(), 2);
        assert_eq!(
            kinds(&s[3].tactics[0]),
            vec![
                TokenKindLite::Lemma("factS".into()),
                TokenKindLite::Lemma("big_add1".into()),
                TokenKindLite::Ih,
                TokenKindLite::Lemma("big_add1".into()),
                TokenKindLite::Lemma("big_nat_recr".into()),
                TokenKindLite::Lemma("mulnC".into()),
            ]
        );
    }

    #[test]
    fn rewrite_modifiers_are_stripped() {
        let mut bound = HashSet::new();
        let t = parse_tactic(
            "rewrite big_mkcond -[n.+1]addn1 mulnDr !big_nat_recr IH //= addn0 2!muln1 ?odd2n",
            &mut bound,
        );
        let k = kinds(&t);
        assert_eq!(
            k,
            vec![
                TokenKindLite::Lemma("big_mkcond".into()),
                TokenKindLite::Lemma("addn1".into()),
                TokenKindLite::Lemma("mulnDr".into()),
                TokenKindLite::Lemma("big_nat_recr".into()),
                TokenKindLite::Ih,
                TokenKindLite::Lemma("addn0".into()),
                TokenKindLite::Lemma("muln1".into()),
                TokenKindLite::Lemma("odd2n".into()),
            ]
        );
        let t = parse_tactic("rewrite exp0n // /index_iota subn0 big1_seq //", &mut bound);
        assert_eq!(t.args.len(), 4);
        assert_eq!(
            kinds(&t)[1],
            TokenKindLite::Lemma("index_iota".into())
        );
    }

    #[test]
    fn bound_names_become_hypotheses() {
        let mut bound = HashSet::new();
        let m = parse_tactic("move/andP => [_ H2]", &mut bound);
        assert_eq!(m.name, "move/");
        assert_eq!(m.args.len(), 2);
        let t = parse_tactic("move : H2", &mut bound);
        assert_eq!(t.name, "move :");
        assert_eq!(kinds(&t), vec![TokenKindLite::Hyp]);
        let t = parse_tactic("rewrite H2 IHl", &mut bound);
        assert_eq!(kinds(&t), vec![TokenKindLite::Hyp, TokenKindLite::Ih]);
    }

    #[test]
    fn vacuous_proof_warns() {
        let p = &parse_script("Lemma x : P. Proof. Qed.").unwrap()[0];
        assert!(p.sentences.is_empty());
        assert_eq!(p.warnings, vec![ScriptWarning::EmptyDerivation]);
    }

    #[test]
    fn missing_statement() {
        let err = parse_script("Lemma x. Proof. trivial. Qed.").unwrap_err();
        assert!(matches!(err, ParseError::MissingStatement { ref lemma, .. } if lemma == "x"));
    }

    #[test]
    fn other_vernacular_is_skipped() {
        let src = "Require Import Arith.\nSection S.\nLemma a : True.\nProof.\ntrivial.\nQed.\nEnd S.";
        let p = parse_script(src).unwrap();
        assert_eq!(p.len(), 1);
        assert_eq!(p[0].sentences.len(), 1);
    }

    #[test]
    fn admitted_proof_is_incomplete() {
        let p = &parse_script("Lemma a : True.\nProof.\nintro.\nAdmitted.").unwrap()[0];
        assert!(!p.complete);
        assert_eq!(p.render(), "intro.\nAdmitted.");
    }
}
