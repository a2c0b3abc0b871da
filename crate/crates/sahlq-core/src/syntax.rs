//! Formula ASTs, the text grammar, polarity analysis, and the Sahlqvist-class
//! recognizers.
//!
//! # Grammar
//!
//! ```text
//! formula  := disj ( "->" formula )?          -- "->" is right-associative
//! disj     := conj ( "|" conj )*
//! conj     := unary ( "&" unary )*
//! unary    := "~" unary | "[]" unary | "<>" unary | atom
//! atom     := "0" | "1" | variable | "(" formula ")"
//! variable := "x" digits | "y" | "z"
//! ```
//!
//! `~`, `[]`, `<>` bind tightest, then `&`, then `|`, then `->`. The modal
//! operators `[]` and `<>` are only accepted when parsing in modal mode.
//!
//! Formulas are also serializable as nested JSON arrays, e.g.
//! `["imp", "x1", ["not", "x2"]]`; the constants are the strings `"0"` and
//! `"1"` and variables are plain strings.

use serde_json::Value;
use std::fmt;
use thiserror::Error;

/// A propositional formula over `{∧, ∨, →, ¬, 0, 1}`, optionally extended
/// with the modal operators `□` (`Box`) and `◇` (`Diamond`).
///
/// Non-modal and modal formulas share this one AST; operations that only make
/// sense for non-modal input check for modal constructors and report an error.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Formula {
    Var(String),
    Const0,
    Const1,
    And(Box<Formula>, Box<Formula>),
    Or(Box<Formula>, Box<Formula>),
    Imp(Box<Formula>, Box<Formula>),
    Not(Box<Formula>),
    Box_(Box<Formula>),
    Diamond(Box<Formula>),
}

/// Sign of the occurrences of a variable in a formula.
///
/// An occurrence is positive iff the number of enclosing negations plus the
/// number of enclosing implication antecedents is even.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Polarity {
    Positive,
    Negative,
    Mixed,
    Absent,
}

/// Result of the Sahlqvist recognizer.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SahlqvistClass {
    /// A Sahlqvist antecedent that is not itself a Sahlqvist formula.
    Antecedent,
    /// A Sahlqvist implication that is not itself a Sahlqvist formula.
    /// (Unreachable for the standard grammar, where every Sahlqvist
    /// implication is a one-implication Sahlqvist formula; kept so the
    /// classification lattice is explicit.)
    Implication,
    /// Built from Sahlqvist implications using only `∧`, `∨` (and `□` in
    /// modal mode).
    SahlqvistFormula,
    NotSahlqvist,
}

/// A Sahlqvist quasiequation
/// `φ₁ ∧ y ≤ z & … & φₙ ∧ y ≤ z ⟹ y ≤ z`
/// with distinguished context variables `y`, `z` not occurring in the
/// premises.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Quasiequation {
    pub premises: Vec<Formula>,
    pub context_y: String,
    pub context_z: String,
}

/// Parse error with a byte offset into the input.
#[derive(Debug, Error, PartialEq, Eq)]
pub enum ParseError {
    #[error("unexpected character {0:?} at byte {1}")]
    UnexpectedChar(char, usize),
    #[error("unexpected end of input")]
    UnexpectedEnd,
    #[error("unexpected token {0:?} at byte {1}")]
    UnexpectedToken(String, usize),
    #[error("modal operator {0:?} at byte {1} but modal mode is off")]
    ModalRejected(String, usize),
    #[error("malformed JSON formula: {0}")]
    BadJson(String),
}

impl Formula {
    pub fn var(name: &str) -> Formula {
        Formula::Var(name.to_string())
    }

    pub fn and(l: Formula, r: Formula) -> Formula {
        Formula::And(Box::new(l), Box::new(r))
    }

    pub fn or(l: Formula, r: Formula) -> Formula {
        Formula::Or(Box::new(l), Box::new(r))
    }

    pub fn imp(l: Formula, r: Formula) -> Formula {
        Formula::Imp(Box::new(l), Box::new(r))
    }

    pub fn not(f: Formula) -> Formula {
        Formula::Not(Box::new(f))
    }

    pub fn box_(f: Formula) -> Formula {
        Formula::Box_(Box::new(f))
    }

    pub fn diamond(f: Formula) -> Formula {
        Formula::Diamond(Box::new(f))
    }

    /// All variable names occurring in the formula, sorted and deduplicated.
    pub fn variables(&self) -> Vec<String> {
        let mut out = Vec::new();
        self.collect_variables(&mut out);
        out.sort();
        out.dedup();
        out
    }

    fn collect_variables(&self, out: &mut Vec<String>) {
        match self {
            Formula::Var(v) => out.push(v.clone()),
            Formula::Const0 | Formula::Const1 => {}
            Formula::And(l, r) | Formula::Or(l, r) | Formula::Imp(l, r) => {
                l.collect_variables(out);
                r.collect_variables(out);
            }
            Formula::Not(a) | Formula::Box_(a) | Formula::Diamond(a) => a.collect_variables(out),
        }
    }

    /// True iff the formula contains `□` or `◇`.
    pub fn is_modal(&self) -> bool {
        match self {
            Formula::Var(_) | Formula::Const0 | Formula::Const1 => false,
            Formula::And(l, r) | Formula::Or(l, r) | Formula::Imp(l, r) => {
                l.is_modal() || r.is_modal()
            }
            Formula::Not(a) => a.is_modal(),
            Formula::Box_(_) | Formula::Diamond(_) => true,
        }
    }

    /// The connectives occurring in the formula, as grammar tokens.
    pub fn connectives(&self) -> Vec<&'static str> {
        let mut out = Vec::new();
        self.collect_connectives(&mut out);
        out.sort();
        out.dedup();
        out
    }

    fn collect_connectives(&self, out: &mut Vec<&'static str>) {
        match self {
            Formula::Var(_) => {}
            Formula::Const0 => out.push("0"),
            Formula::Const1 => out.push("1"),
            Formula::And(l, r) => {
                out.push("&");
                l.collect_connectives(out);
                r.collect_connectives(out);
            }
            Formula::Or(l, r) => {
                out.push("|");
                l.collect_connectives(out);
                r.collect_connectives(out);
            }
            Formula::Imp(l, r) => {
                out.push("->");
                l.collect_connectives(out);
                r.collect_connectives(out);
            }
            Formula::Not(a) => {
                out.push("~");
                a.collect_connectives(out);
            }
            Formula::Box_(a) => {
                out.push("[]");
                a.collect_connectives(out);
            }
            Formula::Diamond(a) => {
                out.push("<>");
                a.collect_connectives(out);
            }
        }
    }

    /// JSON form: nested arrays `["imp", ..., ...]`, constants `"0"`/`"1"`,
    /// variables as plain strings.
    pub fn to_json(&self) -> Value {
        match self {
            Formula::Var(v) => Value::String(v.clone()),
            Formula::Const0 => Value::String("0".into()),
            Formula::Const1 => Value::String("1".into()),
            Formula::And(l, r) => Value::Array(vec!["and".into(), l.to_json(), r.to_json()]),
            Formula::Or(l, r) => Value::Array(vec!["or".into(), l.to_json(), r.to_json()]),
            Formula::Imp(l, r) => Value::Array(vec!["imp".into(), l.to_json(), r.to_json()]),
            Formula::Not(a) => Value::Array(vec!["not".into(), a.to_json()]),
            Formula::Box_(a) => Value::Array(vec!["box".into(), a.to_json()]),
            Formula::Diamond(a) => Value::Array(vec!["dia".into(), a.to_json()]),
        }
    }

    /// Inverse of [`Formula::to_json`].
    pub fn from_json(v: &Value) -> Result<Formula, ParseError> {
        match v {
            Value::String(s) => match s.as_str() {
                "0" => Ok(Formula::Const0),
                "1" => Ok(Formula::Const1),
                name => Ok(Formula::Var(name.to_string())),
            },
            Value::Array(items) => {
                let head = items
                    .first()
                    .and_then(|h| h.as_str())
                    .ok_or_else(|| ParseError::BadJson("missing operator tag".into()))?;
                let arity_2 = |items: &[Value]| -> Result<(Formula, Formula), ParseError> {
                    if items.len() != 3 {
                        return Err(ParseError::BadJson(format!(
                            "operator {head:?} expects 2 arguments"
                        )));
                    }
                    Ok((Formula::from_json(&items[1])?, Formula::from_json(&items[2])?))
                };
                let arity_1 = |items: &[Value]| -> Result<Formula, ParseError> {
                    if items.len() != 2 {
                        return Err(ParseError::BadJson(format!(
                            "operator {head:?} expects 1 argument"
                        )));
                    }
                    Formula::from_json(&items[1])
                };
                match head {
                    "and" => arity_2(items).map(|(l, r)| Formula::and(l, r)),
                    "or" => arity_2(items).map(|(l, r)| Formula::or(l, r)),
                    "imp" => arity_2(items).map(|(l, r)| Formula::imp(l, r)),
                    "not" => arity_1(items).map(Formula::not),
                    "box" => arity_1(items).map(Formula::box_),
                    "dia" => arity_1(items).map(Formula::diamond),
                    other => Err(ParseError::BadJson(format!("unknown operator {other:?}"))),
                }
            }
            other => Err(ParseError::BadJson(format!("unexpected JSON node {other}"))),
        }
    }
}

// ---------------------------------------------------------------------------
// Printing
// ---------------------------------------------------------------------------

/// Precedence levels: higher binds tighter.
fn precedence(f: &Formula) -> u8 {
    match f {
        Formula::Imp(_, _) => 1,
        Formula::Or(_, _) => 2,
        Formula::And(_, _) => 3,
        Formula::Not(_) | Formula::Box_(_) | Formula::Diamond(_) => 4,
        Formula::Var(_) | Formula::Const0 | Formula::Const1 => 5,
    }
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fn child(
            f: &mut fmt::Formatter<'_>,
            c: &Formula,
            min_prec: u8,
        ) -> fmt::Result {
            if precedence(c) < min_prec {
                write!(f, "(")?;
                fmt::Display::fmt(c, f)?;
                write!(f, ")")
            } else {
                fmt::Display::fmt(c, f)
            }
        }
        match self {
            Formula::Var(v) => write!(f, "{v}"),
            Formula::Const0 => write!(f, "0"),
            Formula::Const1 => write!(f, "1"),
            // "->" is right-associative: require strictly higher precedence on
            // the left so nested left implications get parentheses.
            Formula::Imp(l, r) => {
                child(f, l, 2)?;
                write!(f, " -> ")?;
                child(f, r, 1)
            }
            Formula::Or(l, r) => {
                child(f, l, 2)?;
                write!(f, " | ")?;
                child(f, r, 3)
            }
            Formula::And(l, r) => {
                child(f, l, 3)?;
                write!(f, " & ")?;
                child(f, r, 4)
            }
            Formula::Not(a) => {
                write!(f, "~")?;
                child(f, a, 4)
            }
            Formula::Box_(a) => {
                write!(f, "[]")?;
                child(f, a, 4)
            }
            Formula::Diamond(a) => {
                write!(f, "<>")?;
                child(f, a, 4)
            }
        }
    }
}

// ---------------------------------------------------------------------------
// Parsing
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Zero,
    One,
    And,
    Or,
    Imp,
    Not,
    BoxOp,
    DiaOp,
    LParen,
    RParen,
    Ident(String),
}

fn lex(text: &str) -> Result<Vec<(Tok, usize)>, ParseError> {
    let bytes = text.as_bytes();
    let mut i = 0;
    let mut out = Vec::new();
    while i < bytes.len() {
        let c = bytes[i] as char;
        match c {
            ' ' | '\t' | '\n' | '\r' => i += 1,
            '0' => {
                out.push((Tok::Zero, i));
                i += 1;
            }
            '1' => {
                out.push((Tok::One, i));
                i += 1;
            }
            '&' => {
                out.push((Tok::And, i));
                i += 1;
            }
            '|' => {
                out.push((Tok::Or, i));
                i += 1;
            }
            '~' => {
                out.push((Tok::Not, i));
                i += 1;
            }
            '(' => {
                out.push((Tok::LParen, i));
                i += 1;
            }
            ')' => {
                out.push((Tok::RParen, i));
                i += 1;
            }
            '-' => {
                if bytes.get(i + 1) == Some(&b'>') {
                    out.push((Tok::Imp, i));
                    i += 2;
                } else {
                    return Err(ParseError::UnexpectedChar('-', i));
                }
            }
            '[' => {
                if bytes.get(i + 1) == Some(&b']') {
                    out.push((Tok::BoxOp, i));
                    i += 2;
                } else {
                    return Err(ParseError::UnexpectedChar('[', i));
                }
            }
            '<' => {
                if bytes.get(i + 1) == Some(&b'>') {
                    out.push((Tok::DiaOp, i));
                    i += 2;
                } else {
                    return Err(ParseError::UnexpectedChar('<', i));
                }
            }
            'x' => {
                let start = i;
                i += 1;
                let digits_start = i;
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                if i == digits_start {
                    return Err(ParseError::UnexpectedChar('x', start));
                }
                out.push((Tok::Ident(text[start..i].to_string()), start));
            }
            'y' => {
                out.push((Tok::Ident("y".into()), i));
                i += 1;
            }
            'z' => {
                out.push((Tok::Ident("z".into()), i));
                i += 1;
            }
            other => return Err(ParseError::UnexpectedChar(other, i)),
        }
    }
    Ok(out)
}

struct Parser {
    toks: Vec<(Tok, usize)>,
    pos: usize,
    modal: bool,
}

impl Parser {
    fn peek(&self) -> Option<&(Tok, usize)> {
        self.toks.get(self.pos)
    }

    fn bump(&mut self) -> Option<(Tok, usize)> {
        let t = self.toks.get(self.pos).cloned();
        if t.is_some() {
            self.pos += 1;
        }
        t
    }

    fn formula(&mut self) -> Result<Formula, ParseError> {
        let lhs = self.disj()?;
        if let Some((Tok::Imp, _)) = self.peek() {
            self.bump();
            let rhs = self.formula()?; // right-associative
            Ok(Formula::imp(lhs, rhs))
        } else {
            Ok(lhs)
        }
    }

    fn disj(&mut self) -> Result<Formula, ParseError> {
        let mut acc = self.conj()?;
        while let Some((Tok::Or, _)) = self.peek() {
            self.bump();
            let rhs = self.conj()?;
            acc = Formula::or(acc, rhs);
        }
        Ok(acc)
    }

    fn conj(&mut self) -> Result<Formula, ParseError> {
        let mut acc = self.unary()?;
        while let Some((Tok::And, _)) = self.peek() {
            self.bump();
            let rhs = self.unary()?;
            acc = Formula::and(acc, rhs);
        }
        Ok(acc)
    }

    fn unary(&mut self) -> Result<Formula, ParseError> {
        match self.peek().cloned() {
            Some((Tok::Not, _)) => {
                self.bump();
                Ok(Formula::not(self.unary()?))
            }
            Some((Tok::BoxOp, at)) => {
                if !self.modal {
                    return Err(ParseError::ModalRejected("[]".into(), at));
                }
                self.bump();
                Ok(Formula::box_(self.unary()?))
            }
            Some((Tok::DiaOp, at)) => {
                if !self.modal {
                    return Err(ParseError::ModalRejected("<>".into(), at));
                }
                self.bump();
                Ok(Formula::diamond(self.unary()?))
            }
            _ => self.atom(),
        }
    }

    fn atom(&mut self) -> Result<Formula, ParseError> {
        match self.bump() {
            Some((Tok::Zero, _)) => Ok(Formula::Const0),
            Some((Tok::One, _)) => Ok(Formula::Const1),
            Some((Tok::Ident(v), _)) => Ok(Formula::Var(v)),
            Some((Tok::LParen, at)) => {
                let inner = self.formula()?;
                match self.bump() {
                    Some((Tok::RParen, _)) => Ok(inner),
                    Some((t, at)) => Err(ParseError::UnexpectedToken(format!("{t:?}"), at)),
                    None => Err(ParseError::UnexpectedToken("(".into(), at)),
                }
            }
            Some((t, at)) => Err(ParseError::UnexpectedToken(format!("{t:?}"), at)),
            None => Err(ParseError::UnexpectedEnd),
        }
    }
}

/// Parse a formula from the text grammar. Modal operators `[]`, `<>` are
/// rejected unless `modal` is set.
pub fn parse_formula(text: &str, modal: bool) -> Result<Formula, ParseError> {
    let toks = lex(text)?;
    let mut p = Parser { toks, pos: 0, modal };
    let f = p.formula()?;
    if let Some((t, at)) = p.peek() {
        return Err(ParseError::UnexpectedToken(format!("{t:?}"), *at));
    }
    Ok(f)
}

// ---------------------------------------------------------------------------
// Polarity
// ---------------------------------------------------------------------------

/// Sign of the occurrences of `v` in `f`.
pub fn polarity_of(f: &Formula, v: &str) -> Polarity {
    let mut pos = false;
    let mut neg = false;
    fn walk(f: &Formula, v: &str, sign: bool, pos: &mut bool, neg: &mut bool) {
        match f {
            Formula::Var(name) => {
                if name == v {
                    if sign {
                        *pos = true;
                    } else {
                        *neg = true;
                    }
                }
            }
            Formula::Const0 | Formula::Const1 => {}
            Formula::And(l, r) | Formula::Or(l, r) => {
                walk(l, v, sign, pos, neg);
                walk(r, v, sign, pos, neg);
            }
            Formula::Imp(l, r) => {
                walk(l, v, !sign, pos, neg);
                walk(r, v, sign, pos, neg);
            }
            Formula::Not(a) => walk(a, v, !sign, pos, neg),
            Formula::Box_(a) | Formula::Diamond(a) => walk(a, v, sign, pos, neg),
        }
    }
    walk(f, v, true, &mut pos, &mut neg);
    match (pos, neg) {
        (true, true) => Polarity::Mixed,
        (true, false) => Polarity::Positive,
        (false, true) => Polarity::Negative,
        (false, false) => Polarity::Absent,
    }
}

/// True iff every variable occurs only positively in `f`.
pub fn is_positive(f: &Formula) -> bool {
    f.variables()
        .iter()
        .all(|v| matches!(polarity_of(f, v), Polarity::Positive | Polarity::Absent))
}

/// True iff every variable occurs only negatively in `f`.
pub fn is_negative(f: &Formula) -> bool {
    f.variables()
        .iter()
        .all(|v| matches!(polarity_of(f, v), Polarity::Negative | Polarity::Absent))
}

// ---------------------------------------------------------------------------
// Sahlqvist recognizers
// ---------------------------------------------------------------------------

/// A boxed atom is `□ⁿ x` for some `n ≥ 0`; in non-modal mode only `n = 0`
/// (a bare variable) is available.
fn is_boxed_atom(f: &Formula) -> bool {
    match f {
        Formula::Var(_) => true,
        Formula::Box_(a) => is_boxed_atom(a),
        _ => false,
    }
}

/// Sahlqvist antecedent: built from boxed atoms, negative formulas, and the
/// constants `0`, `1` using `∧`, `∨`, and (in modal mode) `◇`.
pub fn is_sahlqvist_antecedent(f: &Formula) -> bool {
    if is_boxed_atom(f) || is_negative(f) {
        return true;
    }
    match f {
        Formula::Const0 | Formula::Const1 => true,
        Formula::And(l, r) | Formula::Or(l, r) => {
            is_sahlqvist_antecedent(l) && is_sahlqvist_antecedent(r)
        }
        Formula::Diamond(a) => is_sahlqvist_antecedent(a),
        _ => false,
    }
}

/// Sahlqvist implication: a positive formula, the negation of a Sahlqvist
/// antecedent, or `antecedent → positive`.
pub fn is_sahlqvist_implication(f: &Formula) -> bool {
    if is_positive(f) {
        return true;
    }
    match f {
        Formula::Not(a) => is_sahlqvist_antecedent(a),
        Formula::Imp(l, r) => is_sahlqvist_antecedent(l) && is_positive(r),
        _ => false,
    }
}

/// Sahlqvist formula: built from Sahlqvist implications using `∧`, `∨`, and
/// (in modal mode) `□`.
pub fn is_sahlqvist_formula(f: &Formula) -> bool {
    if is_sahlqvist_implication(f) {
        return true;
    }
    match f {
        Formula::And(l, r) | Formula::Or(l, r) => {
            is_sahlqvist_formula(l) && is_sahlqvist_formula(r)
        }
        Formula::Box_(a) => is_sahlqvist_formula(a),
        _ => false,
    }
}

/// Classify a formula, reporting the strongest applicable Sahlqvist class.
///
/// With `modal` off, a formula containing `□`/`◇` classifies as
/// `NotSahlqvist` outright.
pub fn classify_sahlqvist(f: &Formula, modal: bool) -> SahlqvistClass {
    if !modal && f.is_modal() {
        return SahlqvistClass::NotSahlqvist;
    }
    if is_sahlqvist_formula(f) {
        SahlqvistClass::SahlqvistFormula
    } else if is_sahlqvist_implication(f) {
        SahlqvistClass::Implication
    } else if is_sahlqvist_antecedent(f) {
        SahlqvistClass::Antecedent
    } else {
        SahlqvistClass::NotSahlqvist
    }
}

// ---------------------------------------------------------------------------
// Quasiequations
// ---------------------------------------------------------------------------

impl Quasiequation {
    /// True iff every premise classifies as a Sahlqvist formula.
    pub fn is_sahlqvist(&self, modal: bool) -> bool {
        self.premises
            .iter()
            .all(|p| classify_sahlqvist(p, modal) == SahlqvistClass::SahlqvistFormula)
    }

    /// Variables of the premises (excludes the contexts).
    pub fn premise_variables(&self) -> Vec<String> {
        let mut out: Vec<String> = self
            .premises
            .iter()
            .flat_map(|p| p.variables())
            .collect();
        out.sort();
        out.dedup();
        out
    }

    /// Render as text, e.g. `x1 & y <= z  &&  ~x1 & y <= z  ==>  y <= z`.
    pub fn display(&self) -> String {
        let mut parts = Vec::new();
        for p in &self.premises {
            let printed = match p {
                Formula::And(_, _) | Formula::Or(_, _) | Formula::Imp(_, _) => {
                    format!("({p})")
                }
                _ => format!("{p}"),
            };
            parts.push(format!(
                "{printed} & {} <= {}",
                self.context_y, self.context_z
            ));
        }
        format!(
            "{}  ==>  {} <= {}",
            parts.join("  &&  "),
            self.context_y,
            self.context_z
        )
    }
}

fn rename_var(f: &Formula, from: &str, to: &str) -> Formula {
    match f {
        Formula::Var(v) if v == from => Formula::Var(to.to_string()),
        Formula::Var(_) | Formula::Const0 | Formula::Const1 => f.clone(),
        Formula::And(l, r) => Formula::and(rename_var(l, from, to), rename_var(r, from, to)),
        Formula::Or(l, r) => Formula::or(rename_var(l, from, to), rename_var(r, from, to)),
        Formula::Imp(l, r) => Formula::imp(rename_var(l, from, to), rename_var(r, from, to)),
        Formula::Not(a) => Formula::not(rename_var(a, from, to)),
        Formula::Box_(a) => Formula::box_(rename_var(a, from, to)),
        Formula::Diamond(a) => Formula::diamond(rename_var(a, from, to)),
    }
}

/// Build a quasiequation with fresh contexts `y`, `z`. If `y` or `z` occurs
/// in a premise, those premise variables are renamed upward to fresh `x_i`.
pub fn build_quasiequation(premises: Vec<Formula>) -> Quasiequation {
    let mut premises = premises;
    let used: Vec<String> = premises.iter().flat_map(|p| p.variables()).collect();
    let mut max_x = 0usize;
    for v in &used {
        if let Some(num) = v.strip_prefix('x').and_then(|d| d.parse::<usize>().ok()) {
            max_x = max_x.max(num);
        }
    }
    for reserved in ["y", "z"] {
        if used.iter().any(|v| v == reserved) {
            max_x += 1;
            let fresh = format!("x{max_x}");
            premises = premises
                .iter()
                .map(|p| rename_var(p, reserved, &fresh))
                .collect();
        }
    }
    Quasiequation {
        premises,
        context_y: "y".into(),
        context_z: "z".into(),
    }
}

// ---------------------------------------------------------------------------
// Builders for the named axioms
// ---------------------------------------------------------------------------

fn xvar(i: usize) -> Formula {
    Formula::Var(format!("x{i}"))
}

/// The `i`-th disjunct of `btw(n)`: `¬(¬xᵢ ∧ x₁ ∧ … ∧ xᵢ₋₁)`, with the empty
/// conjunction elided (so the first disjunct is `¬¬x₁`).
fn btw_disjunct(i: usize) -> Formula {
    let mut inner = Formula::not(xvar(i));
    for j in 1..i {
        inner = Formula::and(inner, xvar(j));
    }
    Formula::not(inner)
}

/// The bounded top width axiom
/// `btwₙ = ⋁_{i=1}^{n+1} ¬(¬xᵢ ∧ ⋀_{0<j<i} xⱼ)`.
///
/// `btw(1)` is syntactically `¬¬x1 ∨ ¬(¬x2 ∧ x1)`.
pub fn btw(n: usize) -> Formula {
    assert!(n >= 1, "btw(n) requires n >= 1");
    let mut acc = btw_disjunct(1);
    for i in 2..=n + 1 {
        acc = Formula::or(acc, btw_disjunct(i));
    }
    acc
}

/// The quasiequation associated with `btw(n)`: one premise per disjunct.
pub fn btw_quasiequation(n: usize) -> Quasiequation {
    assert!(n >= 1, "btw(n) requires n >= 1");
    build_quasiequation((1..=n + 1).map(btw_disjunct).collect())
}

/// Excluded middle `x1 ∨ ¬x1`.
pub fn excluded_middle() -> Formula {
    Formula::or(xvar(1), Formula::not(xvar(1)))
}

/// The quasiequation `x1 ∧ y ≤ z & ¬x1 ∧ y ≤ z ⟹ y ≤ z`.
pub fn excluded_middle_quasiequation() -> Quasiequation {
    build_quasiequation(vec![xvar(1), Formula::not(xvar(1))])
}

/// The Gödel–Dummett axiom `(x1 → x2) ∨ (x2 → x1)`.
pub fn goedel_dummett() -> Formula {
    Formula::or(
        Formula::imp(xvar(1), xvar(2)),
        Formula::imp(xvar(2), xvar(1)),
    )
}

/// The quasiequation with premises `x1 → x2` and `x2 → x1`.
pub fn goedel_dummett_quasiequation() -> Quasiequation {
    build_quasiequation(vec![
        Formula::imp(xvar(1), xvar(2)),
        Formula::imp(xvar(2), xvar(1)),
    ])
}

/// The weak excluded middle law `¬x1 ∨ ¬¬x1`.
pub fn weml() -> Formula {
    Formula::or(
        Formula::not(xvar(1)),
        Formula::not(Formula::not(xvar(1))),
    )
}

/// The quasiequation with premises `¬x1` and `¬¬x1`.
pub fn weml_quasiequation() -> Quasiequation {
    build_quasiequation(vec![
        Formula::not(xvar(1)),
        Formula::not(Formula::not(xvar(1))),
    ])
}
