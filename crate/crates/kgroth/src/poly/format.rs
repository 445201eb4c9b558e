use super::{BetaPoly, Monomial, Rat};
use num_traits::{One, Signed};

fn join_terms(parts: Vec<(bool, String)>) -> String {
    if parts.is_empty() {
        return "0".to_string();
    }
    let mut out = String::new();
    for (k, (neg, body)) in parts.into_iter().enumerate() {
        match (k, neg) {
            (0, true) => out.push('-'),
            (0, false) => {}
            (_, true) => out.push_str(" - "),
            (_, false) => out.push_str(" + "),
        }
        out.push_str(&body);
    }
    out
}

fn text_monomial(m: &Monomial) -> Vec<String> {
    m.support()
        .into_iter()
        .map(|(v, e)| {
            if e == 1 {
                format!("x{v}")
            } else {
                format!("x{v}^{e}")
            }
        })
        .collect()
}

/// Plain text, e.g. `2*x1 + b*x1^2`.
pub fn text(p: &BetaPoly) -> String {
    let parts = p
        .flat_terms()
        .into_iter()
        .map(|(k, c, m)| {
            let mut factors = Vec::new();
            let abs = c.abs();
            let bare = k == 0 && m.degree() == 0;
            if !abs.is_one() || bare {
                factors.push(rat_text(&abs));
            }
            match k {
                0 => {}
                1 => factors.push("b".to_string()),
                _ => factors.push(format!("b^{k}")),
            }
            factors.extend(text_monomial(&m));
            (c.is_negative(), factors.join("*"))
        })
        .collect();
    join_terms(parts)
}

fn rat_text(r: &Rat) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

fn latex_rat(r: &Rat) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("\\tfrac{{{}}}{{{}}}", r.numer(), r.denom())
    }
}

/// LaTeX in the notation `2 \beta x_{1}^{2} x_{2}`.
pub fn latex(p: &BetaPoly) -> String {
    let parts = p
        .flat_terms()
        .into_iter()
        .map(|(k, c, m)| {
            let mut factors = Vec::new();
            let abs = c.abs();
            if !abs.is_one() || (k == 0 && m.degree() == 0) {
                factors.push(latex_rat(&abs));
            }
            match k {
                0 => {}
                1 => factors.push("\\beta".to_string()),
                _ => factors.push(format!("\\beta^{{{k}}}")),
            }
            for (v, e) in m.support() {
                if e == 1 {
                    factors.push(format!("x_{{{v}}}"));
                } else {
                    factors.push(format!("x_{{{v}}}^{{{e}}}"));
                }
            }
            (c.is_negative(), factors.join(" "))
        })
        .collect();
    join_terms(parts)
}

/// `∏ (x_i ⊕ x_j)` over the given cells.
pub fn latex_oplus_product(cells: &[(usize, usize)]) -> String {
    if cells.is_empty() {
        return "1".to_string();
    }
    cells
        .iter()
        .map(|(i, j)| format!("(x_{{{i}}} \\oplus x_{{{j}}})"))
        .collect::<Vec<_>>()
        .join("")
}
