//! LaTeX glyphs for the canonical ASCII forms.

use alloc::format;
use alloc::string::String;

use crate::scalars::{Poly, Scalar};

fn ident_tex(id: &str, out: &mut String) {
    let digits = id.trim_start_matches(|c: char| c.is_ascii_alphabetic());
    let stem = &id[..id.len() - digits.len()];
    match (stem, digits.is_empty()) {
        ("hbar", true) => out.push_str("\\hbar"),
        ("a", false) => out.push_str(&format!("\\alpha_{{{digits}}}")),
        (s, false) => out.push_str(&format!("{s}_{{{digits}}}")),
        (s, true) => out.push_str(s),
    }
}

/// Rewrites one ASCII polynomial or element rendering with LaTeX glyphs.
pub fn ascii_tex(src: &str) -> String {
    let cs: alloc::vec::Vec<char> = src.chars().collect();
    let mut out = String::new();
    let mut k = 0;
    while k < cs.len() {
        let c = cs[k];
        if c.is_ascii_alphabetic() {
            let start = k;
            while k < cs.len() && cs[k].is_ascii_alphanumeric() {
                k += 1;
            }
            let id: String = cs[start..k].iter().collect();
            ident_tex(&id, &mut out);
            continue;
        }
        if c.is_ascii_digit() {
            let start = k;
            while k < cs.len() && cs[k].is_ascii_digit() {
                k += 1;
            }
            let n: String = cs[start..k].iter().collect();
            if cs.get(k) == Some(&'/') && cs.get(k + 1).is_some_and(char::is_ascii_digit) {
                let d0 = k + 1;
                k = d0;
                while k < cs.len() && cs[k].is_ascii_digit() {
                    k += 1;
                }
                let d: String = cs[d0..k].iter().collect();
                out.push_str(&format!("\\tfrac{{{n}}}{{{d}}}"));
            } else {
                out.push_str(&n);
            }
            continue;
        }
        match c {
            '*' => out.push(' '),
            '^' => {
                let start = k + 1;
                k = start;
                while k < cs.len() && (cs[k].is_ascii_digit() || (k == start && cs[k] == '-')) {
                    k += 1;
                }
                let e: String = cs[start..k].iter().collect();
                out.push_str(&format!("^{{{e}}}"));
                continue;
            }
            c => out.push(c),
        }
        k += 1;
    }
    out
}

pub fn poly_tex(p: &Poly) -> String {
    ascii_tex(&format!("{p}"))
}

pub fn scalar_tex(s: &Scalar) -> String {
    if s.den().is_one() {
        poly_tex(s.num())
    } else {
        format!("\\frac{{{}}}{{{}}}", poly_tex(s.num()), poly_tex(s.den()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn glyphs() {
        assert_eq!(ascii_tex("-1/2*hbar^2*a1 + t"), "-\\tfrac{1}{2} \\hbar^{2} \\alpha_{1} + t");
        assert_eq!(ascii_tex("f2^2"), "f_{2}^{2}");
        let s = Scalar::alpha(1).checked_div(&(&Scalar::alpha(0) + &Scalar::one())).unwrap();
        assert_eq!(scalar_tex(&s), "\\frac{\\alpha_{1}}{\\alpha_{0} + 1}");
    }
}
