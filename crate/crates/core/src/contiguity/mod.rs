//! Discrete Painlevé equations obtained as contiguity relations, verified
//! by clearing every formal inverse on both sides.
//!
//! An equation is checked inside a frame: a Weyl word `W` applied to every
//! quantity and coefficient. `W` is an automorphism, so the equation holds
//! iff its image does, and a well-chosen frame maps quantities that leave
//! the shifted-power fragment back into it.

mod systems;
pub mod tex;

use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use crate::dynamics::normalize_k;
use crate::ncalgebra::{Algebra, Element, NcError};
use crate::report::{Check, Report, Residual};
use crate::scalars::{Scalar, Sym, SymMap};
use crate::weyl::{BacklundTable, Word, WeylError};

pub use systems::{derive_pii, derive_piv, derive_pv, pv_auxiliaries};

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum ContiguityError {
    /// Fail-fast result of a derivation: the first check whose residual
    /// did not vanish.
    #[error("derivation failed at {check}: residual {residual}")]
    DerivationFailure { check: String, residual: String },
    #[error("unsupported format {0:?}; expected latex, text or structured")]
    UnsupportedFormat(String),
}

/// `lhs = c * d^-1`, checked as `lhs*d = c` and `d*lhs = c`.
pub fn verify_inverse_identity(lhs: &Element, c: &Scalar, d: &Element) -> bool {
    let target = Element::scalar(lhs.algebra(), c.clone());
    matches!((lhs.mul(d), d.mul(lhs)), (Ok(a), Ok(b)) if a == target && b == target)
}

/// A named value `word(base)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Quantity {
    pub name: String,
    pub tex: String,
    pub word: Word,
    pub base: Element,
}

impl Quantity {
    pub fn new(name: &str, tex: &str, word: Word, base: Element) -> Quantity {
        Quantity { name: name.into(), tex: tex.into(), word, base }
    }

    pub fn one(alg: Algebra) -> Quantity {
        Quantity::new("1", "1", Word::identity(), Element::one(alg))
    }

    fn is_one(&self) -> bool {
        self.name == "1"
    }
}

/// `sum c_k q_k` over named quantities.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct LinearForm(pub Vec<(Scalar, Quantity)>);

impl LinearForm {
    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    fn render(&self, tex: bool) -> String {
        let mut out = String::new();
        for (k, (c, q)) in self.0.iter().enumerate() {
            let body = if q.is_one() {
                None
            } else if tex {
                Some(q.tex.as_str())
            } else {
                Some(q.name.as_str())
            };
            push_term(&mut out, k == 0, c, body, tex);
        }
        if out.is_empty() {
            out.push('0');
        }
        out
    }

    pub fn text(&self) -> String {
        self.render(false)
    }

    pub fn latex(&self) -> String {
        self.render(true)
    }
}

fn scalar_str(c: &Scalar, tex: bool) -> String {
    if tex {
        tex::scalar_tex(c)
    } else {
        c.to_string()
    }
}

fn wrap(c: &Scalar, tex: bool) -> String {
    let s = scalar_str(c, tex);
    if c.den().is_one() && c.num().len() > 1 {
        if tex {
            format!("\\left({s}\\right)")
        } else {
            format!("({s})")
        }
    } else {
        s
    }
}

fn push_sign(out: &mut String, first: bool, neg: bool) {
    out.push_str(match (first, neg) {
        (true, true) => "-",
        (true, false) => "",
        (false, true) => " - ",
        (false, false) => " + ",
    });
}

fn push_term(out: &mut String, first: bool, c: &Scalar, body: Option<&str>, tex: bool) {
    let neg = c.is_negative();
    let mag = if neg { -c } else { c.clone() };
    push_sign(out, first, neg);
    match body {
        None => out.push_str(&wrap(&mag, tex)),
        Some(b) if mag.is_one() => out.push_str(b),
        Some(b) if tex => {
            out.push_str(&wrap(&mag, tex));
            out.push(' ');
            out.push_str(b);
        }
        Some(b) => {
            out.push_str(&wrap(&mag, tex));
            out.push('*');
            out.push_str(b);
        }
    }
}

/// `numerator * inv(denominator)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InverseTerm {
    pub numerator: Scalar,
    pub denominator: LinearForm,
}

/// How values are read before comparison.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum View {
    Plain,
    /// `f_gen -> image` applied to the cleared residual.
    Eliminate { gen: u8, image: Element },
    /// `f2 -> x - f0`, `f3 -> y - f1` with `x, y` central symbols, then
    /// optionally the gauge `x = y = value`.
    Promote { gauge: Option<Scalar> },
}

impl fmt::Display for View {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            View::Plain => f.write_str("plain"),
            View::Eliminate { gen, image } => write!(f, "f{gen} = {image}"),
            View::Promote { gauge: None } => f.write_str("x, y central"),
            View::Promote { gauge: Some(v) } => write!(f, "x = y = {v}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Equation {
    /// Role of the relation, e.g. "up-shift of f2".
    pub label: String,
    pub lhs: LinearForm,
    pub rhs_regular: LinearForm,
    pub rhs_inverse: Vec<InverseTerm>,
    pub frame: Word,
    pub view: View,
    /// Read every value with `alpha_0 = 1 - alpha_1 - ...`.
    pub normalize: bool,
    pub note: Option<String>,
}

impl Equation {
    fn render_rhs(&self, tex: bool) -> String {
        let mut out = if self.rhs_regular.is_empty() {
            String::new()
        } else {
            self.rhs_regular.render(tex)
        };
        for t in &self.rhs_inverse {
            let first = out.is_empty();
            let neg = t.numerator.is_negative();
            let mag = if neg { -&t.numerator } else { t.numerator.clone() };
            push_sign(&mut out, first, neg);
            if tex {
                out.push_str(&format!("\\frac{{{}}}{{{}}}", scalar_str(&mag, true), t.denominator.latex()));
            } else {
                let den = format!("inv({})", t.denominator.text());
                if mag.is_one() {
                    out.push_str(&den);
                } else {
                    out.push_str(&format!("{}*{den}", wrap(&mag, false)));
                }
            }
        }
        if out.is_empty() {
            out.push('0');
        }
        out
    }

    pub fn rhs_text(&self) -> String {
        self.render_rhs(false)
    }

    pub fn text(&self) -> String {
        format!("{} = {}", self.lhs.text(), self.rhs_text())
    }

    pub fn latex(&self) -> String {
        format!("{} = {}", self.lhs.latex(), self.render_rhs(true))
    }
}

/// A cleared product that was checked: `lhs * d = c = d * lhs`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Certificate {
    pub equation: String,
    pub frame: Word,
    pub lhs: Element,
    pub c: Scalar,
    pub d: Element,
}

impl Certificate {
    pub fn holds(&self) -> bool {
        verify_inverse_identity(&self.lhs, &self.c, &self.d)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ShiftWord {
    pub name: String,
    pub word: Word,
}

/// `param -> image` under the named shift, read with `k = 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParamShift {
    pub shift: String,
    pub param: Scalar,
    pub image: Scalar,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DiscreteSystem {
    /// Target name: `pii`, `piv` or `pv`.
    pub name: String,
    pub title: String,
    pub alg: Algebra,
    pub shifts: Vec<ShiftWord>,
    pub equations: Vec<Equation>,
    pub param_shifts: Vec<ParamShift>,
    pub certificates: Vec<Certificate>,
    pub report: Report,
}

impl DiscreteSystem {
    pub fn new(name: &str, title: &str, alg: Algebra) -> DiscreteSystem {
        DiscreteSystem {
            name: name.into(),
            title: title.into(),
            alg,
            shifts: Vec::new(),
            equations: Vec::new(),
            param_shifts: Vec::new(),
            certificates: Vec::new(),
            report: Report::new(format!("contiguity {name}")),
        }
    }

    pub fn verified(&self) -> bool {
        self.report.all_passed()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Latex,
    Text,
    Structured,
}

impl FromStr for Format {
    type Err = ContiguityError;

    fn from_str(s: &str) -> Result<Format, ContiguityError> {
        match s {
            "latex" => Ok(Format::Latex),
            "text" => Ok(Format::Text),
            "structured" => Ok(Format::Structured),
            other => Err(ContiguityError::UnsupportedFormat(other.into())),
        }
    }
}

fn status_line(sys: &DiscreteSystem) -> &'static str {
    if sys.verified() {
        "verified"
    } else {
        "UNVERIFIED"
    }
}

/// Canonical ASCII document.
pub fn emit_text(sys: &DiscreteSystem) -> String {
    let mut out = format!("# {} [{}] {}\n", sys.title, sys.alg, status_line(sys));
    for s in &sys.shifts {
        out.push_str(&format!("shift {} = {}\n", s.name, s.word));
    }
    for e in &sys.equations {
        out.push_str(&format!("{}\n", e.text()));
        out.push_str(&format!("  # {}; frame {}; view {}\n", e.label, e.frame, e.view));
    }
    for p in &sys.param_shifts {
        out.push_str(&format!("param {}: {} -> {}\n", p.shift, p.param, p.image));
    }
    out
}

fn shift_tex(name: &str) -> String {
    let (stem, power) = name.split_once('^').unwrap_or((name, ""));
    let glyph = match stem {
        "bar" => "\\bar{\\ }",
        "ubar" => "\\underline{\\ }",
        "tilde" => "\\tilde{\\ }",
        "hat" => "\\hat{\\ }",
        other => other,
    };
    if power.is_empty() {
        glyph.into()
    } else {
        format!("{glyph}^{{{power}}}")
    }
}

fn word_tex(w: &Word) -> String {
    if w.is_identity() {
        return "1".into();
    }
    let parts: Vec<String> = w
        .letters()
        .iter()
        .map(|l| match l {
            crate::weyl::Letter::S(i) => format!("s_{{{i}}}"),
            crate::weyl::Letter::Pi => "\\pi".into(),
            crate::weyl::Letter::PiInv => "\\pi^{-1}".into(),
        })
        .collect();
    parts.join(" ")
}

pub fn emit_latex(sys: &DiscreteSystem) -> String {
    let mut out = format!("% {} [{}] {}\n", sys.title, sys.alg, status_line(sys));
    out.push_str("\\begin{align*}\n");
    for s in &sys.shifts {
        out.push_str(&format!("  &{} = {} \\\\\n", shift_tex(&s.name), word_tex(&s.word)));
    }
    for e in &sys.equations {
        out.push_str(&format!("  &{} \\\\\n", e.latex()));
    }
    for p in &sys.param_shifts {
        out.push_str(&format!(
            "  &{}\\colon\\ {} \\mapsto {} \\\\\n",
            shift_tex(&p.shift),
            tex::scalar_tex(&p.param),
            tex::scalar_tex(&p.image)
        ));
    }
    out.push_str("\\end{align*}\n");
    out
}

// ---- verification ------------------------------------------------------

fn promote(e: &Element) -> Result<Element, NcError> {
    let alg = e.algebra();
    let x = Element::scalar(alg, Scalar::sym(Sym::X));
    let y = Element::scalar(alg, Scalar::sym(Sym::Y));
    let f2 = &x - &Element::gen(alg, 0);
    let f3 = &y - &Element::gen(alg, 1);
    e.substitute(&|j| match j {
        2 => Some(f2.clone()),
        3 => Some(f3.clone()),
        _ => None,
    })
}

fn gauge_map(v: &Scalar) -> SymMap {
    [(Sym::X, v.clone()), (Sym::Y, v.clone())].into_iter().collect()
}

/// Evaluates one equation in its frame.
pub(crate) struct Evaluator {
    table: BacklundTable,
    norm: SymMap,
}

#[derive(Debug)]
pub(crate) enum EvalError {
    Weyl(WeylError),
    Nc(NcError),
}

impl From<WeylError> for EvalError {
    fn from(e: WeylError) -> Self {
        EvalError::Weyl(e)
    }
}

impl From<NcError> for EvalError {
    fn from(e: NcError) -> Self {
        EvalError::Nc(e)
    }
}

impl From<crate::scalars::ScalarError> for EvalError {
    fn from(e: crate::scalars::ScalarError) -> Self {
        EvalError::Nc(e.into())
    }
}

impl fmt::Display for EvalError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            EvalError::Weyl(e) => write!(f, "{e}"),
            EvalError::Nc(e) => write!(f, "{e}"),
        }
    }
}

/// What verifying one equation produced.
pub(crate) struct Outcome {
    pub residual: Element,
    pub certificates: Vec<Certificate>,
}

impl Evaluator {
    pub fn new(alg: Algebra) -> Evaluator {
        Evaluator { table: BacklundTable::new(alg), norm: normalize_k(alg) }
    }

    fn read_scalar(&self, eq: &Equation, c: &Scalar) -> Result<Scalar, EvalError> {
        let mut c = self.table.params(&eq.frame, c)?;
        if eq.normalize {
            c = c.subst(&self.norm)?;
        }
        if let View::Promote { gauge: Some(v) } = &eq.view {
            c = c.subst(&gauge_map(v))?;
        }
        Ok(c)
    }

    fn read_element(&self, eq: &Equation, e: Element) -> Result<Element, EvalError> {
        let mut e = e;
        if eq.normalize {
            e = e.subst_scalars(&self.norm)?;
        }
        if let View::Promote { gauge } = &eq.view {
            e = promote(&e)?;
            if let Some(v) = gauge {
                e = e.subst_scalars(&gauge_map(v))?;
            }
        }
        Ok(e)
    }

    pub fn quantity(&self, frame: &Word, q: &Quantity) -> Result<Element, EvalError> {
        let w = frame.then(&q.word).reduced(self.table.algebra());
        Ok(self.table.apply(&w, &q.base)?)
    }

    fn form(&self, eq: &Equation, f: &LinearForm) -> Result<Element, EvalError> {
        let mut acc = Element::zero(self.table.algebra());
        for (c, q) in &f.0 {
            let v = self.read_element(eq, self.quantity(&eq.frame, q)?)?;
            acc += &v.scale(&self.read_scalar(eq, c)?);
        }
        Ok(acc)
    }

    fn eliminate(&self, eq: &Equation, e: &Element) -> Result<Element, EvalError> {
        match &eq.view {
            View::Eliminate { gen, image } => Ok(e.subst_generator(*gen, image)?),
            _ => Ok(e.clone()),
        }
    }

    pub fn verify(&self, eq: &Equation) -> Result<Outcome, EvalError> {
        let lhs = self.form(eq, &eq.lhs)?;
        let reg = self.form(eq, &eq.rhs_regular)?;
        let mut certs = Vec::new();
        let mut residual = &lhs - &reg;
        let single = eq.rhs_inverse.len() == 1;
        for t in &eq.rhs_inverse {
            let c = self.read_scalar(eq, &t.numerator)?;
            let d = self.form(eq, &t.denominator)?;
            let term = d.inverse()?.scale(&c);
            residual -= &term;
            if !single {
                certs.push(Certificate { equation: eq.label.clone(), frame: eq.frame.clone(), lhs: term, c, d });
            } else {
                let cleared = self.eliminate(eq, &(&lhs - &reg))?;
                let d = self.eliminate(eq, &d)?;
                certs.push(Certificate { equation: eq.label.clone(), frame: eq.frame.clone(), lhs: cleared, c, d });
            }
        }
        let residual = self.eliminate(eq, &residual)?;
        Ok(Outcome { residual, certificates: certs })
    }
}

/// Residual and cleared products of one equation, without recording them.
pub fn check_equation(alg: Algebra, eq: &Equation) -> Result<(Element, Vec<Certificate>), String> {
    Evaluator::new(alg).verify(eq).map(|o| (o.residual, o.certificates)).map_err(|e| e.to_string())
}

/// Verifies `eq`, records its checks and certificates on `sys`.
pub(crate) fn add_equation(sys: &mut DiscreteSystem, ev: &Evaluator, eq: Equation) {
    let label = format!("{}: {}", eq.label, eq.text());
    match ev.verify(&eq) {
        Ok(out) => {
            let mut check = Check::zero(label, Residual::Element(out.residual));
            if !eq.frame.is_identity() {
                check = check.with_note(format!("in frame {}", eq.frame));
            }
            sys.report.push(check);
            for c in out.certificates {
                let ok = c.holds();
                let r = if ok { Residual::Element(Element::zero(sys.alg)) } else { Residual::Error(format!("{} * ({}) != {}", c.lhs, c.d, c.c)) };
                sys.report.push(Check::zero(format!("certificate for {}: ({}) * ({}) = {}", c.equation, c.lhs, c.d, c.c), r));
                sys.certificates.push(c);
            }
        }
        Err(e) => sys.report.push(Check::zero(label, Residual::Error(e.to_string()))),
    }
    sys.equations.push(eq);
}

/// First failing check as an error, else the system.
pub(crate) fn finish(sys: DiscreteSystem) -> Result<DiscreteSystem, ContiguityError> {
    if let Some(c) = sys.report.failures().next() {
        return Err(ContiguityError::DerivationFailure { check: c.label.clone(), residual: c.residual.to_string() });
    }
    Ok(sys)
}
