use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use super::{add_equation, finish, ContiguityError, DiscreteSystem, Equation, Evaluator, InverseTerm, LinearForm, ParamShift, Quantity, ShiftWord, View};
use crate::dynamics::normalize_k;
use crate::ncalgebra::{Algebra, Element};
use crate::report::{Check, Residual};
use crate::scalars::{Scalar, Sym};
use crate::weyl::{BacklundTable, Word};

fn word(s: &str) -> Word {
    s.parse().expect("static word")
}

fn one() -> Scalar {
    Scalar::one()
}

fn neg(c: Scalar) -> Scalar {
    -&c
}

fn a(i: u8) -> Scalar {
    Scalar::alpha(i)
}

fn lf(terms: &[(Scalar, &Quantity)]) -> LinearForm {
    LinearForm(terms.iter().map(|(c, q)| (c.clone(), (*q).clone())).collect())
}

fn inv(numerator: Scalar, denominator: LinearForm) -> InverseTerm {
    InverseTerm { numerator, denominator }
}

fn eq(label: &str, lhs: LinearForm, rhs_regular: LinearForm, rhs_inverse: Vec<InverseTerm>) -> Equation {
    Equation { label: label.into(), lhs, rhs_regular, rhs_inverse, frame: Word::identity(), view: View::Plain, normalize: false, note: None }
}

impl Equation {
    fn in_frame(mut self, w: &str) -> Equation {
        self.frame = word(w);
        self
    }

    fn viewed(mut self, v: View) -> Equation {
        self.view = v;
        self
    }

    fn normalized(mut self) -> Equation {
        self.normalize = true;
        self
    }

    fn noted(mut self, n: &str) -> Equation {
        self.note = Some(n.into());
        self
    }
}

fn zero_check(sys: &mut DiscreteSystem, label: String, r: Result<Element, String>) {
    let res = match r {
        Ok(e) => Residual::Element(e),
        Err(e) => Residual::Error(e),
    };
    sys.report.push(Check::zero(label, res));
}

fn scalar_check(sys: &mut DiscreteSystem, label: String, r: Result<Scalar, String>) {
    let res = match r {
        Ok(s) => Residual::Scalar(s),
        Err(e) => Residual::Error(e),
    };
    sys.report.push(Check::zero(label, res));
}

fn err<E: core::fmt::Display>(e: E) -> String {
    format!("{e}")
}

/// Records `param -> image` under `w`, checked with `k = 1`.
fn param_shift(sys: &mut DiscreteSystem, shift: &str, w: &Word, param: Scalar, image: Scalar) {
    let table = BacklundTable::new(sys.alg);
    let norm = normalize_k(sys.alg);
    let r = (|| {
        let got = table.params(w, &param).map_err(err)?.subst(&norm).map_err(err)?;
        let want = image.subst(&norm).map_err(err)?;
        Ok(&want - &got)
    })();
    scalar_check(sys, format!("{shift} ({w}) maps {param} to {image}"), r);
    sys.param_shifts.push(ParamShift { shift: shift.into(), param, image });
}

fn shift(sys: &mut DiscreteSystem, name: &str, w: &str) -> Word {
    let w = word(w);
    sys.shifts.push(ShiftWord { name: name.into(), word: w.clone() });
    w
}

/// Alternate discrete Painlevé I from the three-generator algebra.
pub fn derive_pii() -> Result<DiscreteSystem, ContiguityError> {
    let alg = Algebra::pii();
    let mut sys = DiscreteSystem::new("pii", "alternate discrete Painleve I", alg);
    let ev = Evaluator::new(alg);
    let up = shift(&mut sys, "bar", "s1 p");
    let down = shift(&mut sys, "ubar", "p s1");
    let g = |i| Element::gen(alg, i);
    let id = Word::identity;
    let f1 = Quantity::new("f1", "f_{1}", id(), g(1));
    let f2 = Quantity::new("f2", "f_{2}", id(), g(2));
    let f2sq = Quantity::new("f2^2", "f_{2}^{2}", id(), g(2).pow(2).expect("power"));
    let fbar2 = Quantity::new("fbar2", "\\bar f_{2}", up.clone(), g(2));
    let fubar1 = Quantity::new("fubar1", "\\underline{f}_{1}", down.clone(), g(1));
    let fubar2 = Quantity::new("fubar2", "\\underline{f}_{2}", down.clone(), g(2));
    let unit = Quantity::one(alg);
    let t = Scalar::sym(Sym::T);
    let constraint = View::Eliminate { gen: 0, image: &(&Element::scalar(alg, t.clone()) - &g(1)) - &f2sq.base };

    add_equation(
        &mut sys,
        &ev,
        eq("up-shift of f2", lf(&[(one(), &fbar2), (one(), &f2)]), LinearForm::default(), vec![inv(a(1), lf(&[(one(), &f1)]))]),
    );
    add_equation(
        &mut sys,
        &ev,
        eq("down-shift of f1", lf(&[(one(), &fubar1), (one(), &f1)]), lf(&[(t.clone(), &unit), (neg(one()), &f2sq)]), Vec::new())
            .viewed(constraint.clone()),
    );
    add_equation(
        &mut sys,
        &ev,
        eq(
            "alternate discrete Painleve I",
            lf(&[(t, &unit), (neg(one()), &f2sq)]),
            LinearForm::default(),
            vec![
                inv(a(1), lf(&[(one(), &fbar2), (one(), &f2)])),
                inv(&a(1) - &one(), lf(&[(one(), &fubar2), (one(), &f2)])),
            ],
        )
        .viewed(constraint)
        .normalized()
        .noted("both inverses are cleared through the up-shift relation and its down-shifted copy"),
    );

    let table = BacklundTable::new(alg);
    let back = table.apply(&up, &g(2)).and_then(|e| table.apply(&down, &e)).map(|e| &e - &g(2)).map_err(err);
    zero_check(&mut sys, format!("shift then anti-shift returns f2 ({down} after {up})"), back);
    // The up-shift relation with every index lowered, evaluated directly.
    let lowered = (|| {
        let fu1 = table.apply(&down, &g(1)).map_err(err)?;
        let fu2 = table.apply(&down, &g(2)).map_err(err)?;
        let au1 = table.params(&down, &a(1)).map_err(err)?;
        let rhs = fu1.inverse().map_err(err)?.scale(&au1);
        Ok(&(&g(2) + &fu2) - &rhs)
    })();
    zero_check(&mut sys, String::from("down-shifted copy of the up-shift relation: f2 + fubar2 = -a0*inv(fubar1)"), lowered);

    param_shift(&mut sys, "bar", &up, a(1), &a(1) + &one());
    param_shift(&mut sys, "ubar", &down, a(1), &a(1) - &one());
    param_shift(&mut sys, "bar^3", &up.pow(3), a(1), &a(1) + &Scalar::int(3));
    finish(sys)
}

/// Asymmetric discrete Painlevé I from `AL(2)`.
pub fn derive_piv() -> Result<DiscreteSystem, ContiguityError> {
    let alg = Algebra::al(2).expect("rank 2");
    let mut sys = DiscreteSystem::new("piv", "asymmetric discrete Painleve I", alg);
    let ev = Evaluator::new(alg);
    let up = shift(&mut sys, "bar", "s1 s0 p");
    let down = shift(&mut sys, "ubar", "p~ s0 s1");
    let g = |i| Element::gen(alg, i);
    let id = Word::identity;
    let f1 = Quantity::new("f1", "f_{1}", id(), g(1));
    let f2 = Quantity::new("f2", "f_{2}", id(), g(2));
    let fbar2 = Quantity::new("fbar2", "\\bar f_{2}", up.clone(), g(2));
    let fubar1 = Quantity::new("fubar1", "\\underline{f}_{1}", down, g(1));
    let unit = Quantity::one(alg);
    let t = Scalar::sym(Sym::T);
    let sum = View::Eliminate { gen: 0, image: &(&Element::scalar(alg, t.clone()) - &g(1)) - &g(2) };

    add_equation(
        &mut sys,
        &ev,
        eq("up-shift of f2", lf(&[(one(), &fbar2), (one(), &f1), (one(), &f2)]), lf(&[(t.clone(), &unit)]), vec![inv(neg(a(1)), lf(&[(one(), &f1)]))])
            .viewed(sum.clone())
            .normalized(),
    );
    add_equation(
        &mut sys,
        &ev,
        eq("down-shift of f1", lf(&[(one(), &f1), (one(), &f2), (one(), &fubar1)]), lf(&[(t, &unit)]), vec![inv(a(2), lf(&[(one(), &f2)]))])
            .viewed(sum)
            .normalized(),
    );

    param_shift(&mut sys, "bar", &up, a(1), &a(1) + &one());
    param_shift(&mut sys, "bar", &up, neg(a(2)), &neg(a(2)) + &one());
    finish(sys)
}

/// `(x, y, g, h)` in `AL(3)`.
pub fn pv_auxiliaries() -> [(&'static str, Element); 4] {
    let alg = Algebra::al(3).expect("rank 3");
    let g = |i| Element::gen(alg, i);
    let f0inv = Element::inv_power(alg, 0, &Scalar::zero(), -1).expect("inverse");
    let f2inv = Element::inv_power(alg, 2, &Scalar::zero(), -1).expect("inverse");
    [
        ("x", &g(0) + &g(2)),
        ("y", &g(1) + &g(3)),
        ("g", &g(3) - &f0inv.scale(&a(0))),
        ("h", &g(3) + &f2inv.scale(&a(2))),
    ]
}

/// Asymmetric discrete Painlevé II from `AL(3)`.
pub fn derive_pv() -> Result<DiscreteSystem, ContiguityError> {
    let alg = Algebra::al(3).expect("rank 3");
    let mut sys = DiscreteSystem::new("pv", "asymmetric discrete Painleve II", alg);
    let ev = Evaluator::new(alg);
    let r = shift(&mut sys, "bar", "p s3 s2 s1");
    let t = shift(&mut sys, "tilde", "s1 p s3 s2");
    let s = shift(&mut sys, "hat", "p s3 s2 s1 s1 p s3 s2");
    let table = BacklundTable::new(alg);
    let gen = |i| Element::gen(alg, i);
    let [(_, x), (_, y), (_, g), (_, h)] = pv_auxiliaries();
    let id = Word::identity;

    for (name, e) in [("x", &x), ("y", &y)] {
        let r = e.is_central().map_err(err).and_then(|c| if c { Ok(Element::zero(alg)) } else { Err(String::from("not central")) });
        zero_check(&mut sys, format!("{name} = {e} is central"), r);
    }
    for (wname, w, arg, argn, want, wantn) in [
        ("bar", &r, &x, "x", &y, "y"),
        ("bar", &r, &y, "y", &x, "x"),
        ("tilde", &t, &x, "x", &y, "y"),
        ("tilde", &t, &y, "y", &x, "x"),
        ("hat", &s, &x, "x", &x, "x"),
        ("hat", &s, &y, "y", &y, "y"),
    ] {
        let res = table.apply(w, arg).map(|v| &v - want).map_err(err);
        zero_check(&mut sys, format!("{wname} ({w}) maps {argn} to {wantn}"), res);
    }
    let link = table.apply(&s, &(&y - &h)).map(|v| &v - &g).map_err(err);
    zero_check(&mut sys, String::from("linking identity g = hat(y - h)"), link);
    let norm = normalize_k(alg);
    let rt = (|| {
        let got = table.params(&s, &(&a(2) + &a(3))).map_err(err)?.subst(&norm).map_err(err)?;
        let want = neg(&a(0) + &a(1)).subst(&norm).map_err(err)?;
        Ok(&got - &want)
    })();
    scalar_check(&mut sys, String::from("hat (a2 + a3) = -(a0 + a1)"), rt);

    let q = |name: &str, tex: &str, w: &Word, base: &Element| Quantity::new(name, tex, w.clone(), base.clone());
    let f0 = q("f0", "f_{0}", &id(), &gen(0));
    let f1 = q("f1", "f_{1}", &id(), &gen(1));
    let f2 = q("f2", "f_{2}", &id(), &gen(2));
    let xq = q("x", "x", &id(), &x);
    let yq = q("y", "y", &id(), &y);
    let gq = q("g", "g", &id(), &g);
    let hq = q("h", "h", &id(), &h);
    let fbar1 = q("fbar1", "\\bar f_{1}", &r, &gen(1));
    let gubar = q("gubar", "\\underline{g}", &r.inverse(), &g);
    let futilde1 = q("futilde1", "\\underset{\\sim}{f}_{1}", &t.inverse(), &gen(1));
    let htilde = q("htilde", "\\tilde h", &t, &h);
    let hhat = q("hhat", "\\hat h", &s, &h);
    let fhat0 = q("fhat0", "\\hat f_{0}", &s, &gen(0));
    let fhat2 = q("fhat2", "\\hat f_{2}", &s, &gen(2));
    let half = Scalar::ratio(1, 2);
    let hc = &h - &y.scale(&half);
    let fc = &gen(0) - &x.scale(&half);
    let h_c = q("h", "h", &id(), &hc);
    let hhat_c = q("hhat", "\\hat h", &s, &hc);
    let f0_c = q("f0", "f_{0}", &id(), &fc);
    let fhat0_c = q("fhat0", "\\hat f_{0}", &s, &fc);
    let unit = Quantity::one(alg);
    let m1 = || neg(one());
    let gauge = View::Promote { gauge: Some(Scalar::int(2)) };
    let recentered = "recentered: h -> h - y/2, f0 -> f0 - x/2";

    let eqs = [
        eq("bar-shift of f1", lf(&[(one(), &fbar1), (one(), &f0)]), lf(&[(one(), &xq)]), vec![inv(neg(&a(0) + &a(3)), lf(&[(one(), &gq)]))]).in_frame("s3 p~"),
        eq("definition of g", lf(&[(one(), &f1), (one(), &gq)]), lf(&[(one(), &yq)]), vec![inv(neg(a(0)), lf(&[(one(), &f0)]))]),
        eq("bar-inverse of g", lf(&[(one(), &gubar), (one(), &f0)]), lf(&[(one(), &xq)]), vec![inv(a(1), lf(&[(one(), &f1)]))]),
        eq("tilde-inverse of f1", lf(&[(one(), &futilde1), (one(), &f2)]), lf(&[(one(), &xq)]), vec![inv(&a(2) + &a(3), lf(&[(one(), &hq)]))]).in_frame("s2"),
        eq("definition of h", lf(&[(one(), &hq), (one(), &f1)]), lf(&[(one(), &yq)]), vec![inv(a(2), lf(&[(one(), &f2)]))]),
        eq("tilde-shift of h", lf(&[(one(), &f2), (one(), &htilde)]), lf(&[(one(), &xq)]), vec![inv(neg(a(1)), lf(&[(one(), &f1)]))]),
        eq(
            "hat-shift of h",
            lf(&[(one(), &hq), (one(), &hhat)]),
            lf(&[(one(), &yq)]),
            vec![inv(a(0), lf(&[(one(), &f0)])), inv(neg(a(2)), lf(&[(one(), &f0), (m1(), &xq)]))],
        )
        .viewed(View::Promote { gauge: None })
        .noted("eliminates g and f1 between the definition of g and the bar-inverse of g, shifted by hat"),
        eq("hat-shift of f2", lf(&[(one(), &fbar1), (one(), &fhat2)]), lf(&[(one(), &xq)]), vec![inv(neg(&a(0) + &a(1)), lf(&[(one(), &hhat)]))])
            .in_frame("s0")
            .noted("eliminates g between the bar-shift of f1 and the linking identity"),
        eq(
            "hat-shift of f0",
            lf(&[(one(), &f0), (one(), &fhat0)]),
            lf(&[(one(), &xq)]),
            vec![inv(&a(0) + &a(3), lf(&[(one(), &hhat), (m1(), &yq)])), inv(&a(0) + &a(1), lf(&[(one(), &hhat)]))],
        )
        .in_frame("s0")
        .noted("adds the hat-shift of f2 to the hat image of the bar-shift of f1"),
        eq(
            "recentered hat-shift of h",
            lf(&[(one(), &h_c), (one(), &hhat_c)]),
            LinearForm::default(),
            vec![inv(a(0), lf(&[(one(), &f0_c), (one(), &unit)])), inv(neg(a(2)), lf(&[(one(), &f0_c), (m1(), &unit)]))],
        )
        .viewed(gauge.clone())
        .noted(recentered),
        eq(
            "recentered hat-shift of f0",
            lf(&[(one(), &f0_c), (one(), &fhat0_c)]),
            LinearForm::default(),
            vec![inv(&a(0) + &a(3), lf(&[(one(), &hhat_c), (m1(), &unit)])), inv(&a(0) + &a(1), lf(&[(one(), &hhat_c), (one(), &unit)]))],
        )
        .in_frame("s0")
        .viewed(gauge)
        .noted(recentered),
    ];
    for e in eqs {
        add_equation(&mut sys, &ev, e);
    }

    for (i, want) in [(0, &a(0) + &one()), (1, &a(1) - &one()), (2, a(2)), (3, a(3))] {
        param_shift(&mut sys, "bar", &r, a(i), want);
    }
    for (i, want) in [(0, a(0)), (1, &a(1) + &one()), (2, &a(2) - &one()), (3, a(3))] {
        param_shift(&mut sys, "tilde", &t, a(i), want);
    }
    for p in [a(0), neg(a(2)), &a(0) + &a(3), &a(0) + &a(1)] {
        let want = &p + &one();
        param_shift(&mut sys, "hat", &s, p, want);
    }
    finish(sys)
}
