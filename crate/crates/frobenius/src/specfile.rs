//! Plain-text algebra description files.
//!
//! Line-oriented format; `#` starts a comment, blank lines are ignored.
//!
//! ```text
//! # dual numbers over F_3 with the sign automorphism
//! field 3                  # "Q" or a prime p < 2^31
//! vertices v
//! arrow x v v              # name source target [degree]
//! bound 2                  # paths of length >= bound vanish
//! relation x*x             # paths compose left-to-right
//! automorphism x -> -x     # optional, one line per arrow
//! ```
//!
//! Relations and automorphism images are signed linear combinations of
//! paths: terms are separated by `+`/`-`, each term is an optional
//! coefficient (integer or fraction `n/m`) followed by a path `a*b*c`.
//! Fractional coefficients are cleared to integers by the common
//! denominator before the relation is imposed (same ideal).

use std::collections::HashMap;

use crate::algebra::{Algebra, AlgebraMorphism, Arrow, QuiverPresentation};
use crate::error::Error;
use crate::linalg::{Field, Matrix, Scalar};

/// A parsed description: the algebra plus the optional automorphism.
#[derive(Debug)]
pub struct ParsedSpec {
    pub algebra: Algebra,
    pub automorphism: Option<AlgebraMorphism>,
}

#[derive(Debug, Clone, PartialEq)]
struct Term {
    num: i64,
    den: i64,
    path: Vec<String>,
}

fn parse_error(line: usize, message: impl Into<String>) -> Error {
    Error::Parse { line, message: message.into() }
}

fn parse_coefficient(token: &str) -> Option<(i64, i64)> {
    if let Some((n, d)) = token.split_once('/') {
        let num: i64 = n.parse().ok()?;
        let den: i64 = d.parse().ok()?;
        (den != 0).then_some((num, den))
    } else {
        token.parse().ok().map(|n| (n, 1))
    }
}

/// Split an expression into signed terms: coefficient and path word.
fn parse_expression(expr: &str, line: usize) -> Result<Vec<Term>, Error> {
    // insert separators around signs, then walk
    let mut terms = Vec::new();
    let mut sign = 1i64;
    let mut current = String::new();
    let mut chunks: Vec<(i64, String)> = Vec::new();
    for c in expr.chars() {
        match c {
            '+' | '-' => {
                if !current.trim().is_empty() {
                    chunks.push((sign, current.trim().to_string()));
                } else if !chunks.is_empty() && current.trim().is_empty() && sign != 1 {
                    return Err(parse_error(line, "dangling sign"));
                }
                current.clear();
                sign = if c == '-' { -1 } else { 1 };
            }
            _ => current.push(c),
        }
    }
    if current.trim().is_empty() {
        return Err(parse_error(line, "empty term"));
    }
    chunks.push((sign, current.trim().to_string()));
    for (sign, chunk) in chunks {
        // components split by '*' or whitespace; leading numeric tokens
        // are coefficients
        let parts: Vec<&str> = chunk
            .split(|c: char| c == '*' || c.is_whitespace())
            .filter(|s| !s.is_empty())
            .collect();
        let mut num = sign;
        let mut den = 1i64;
        let mut path = Vec::new();
        for p in parts {
            if path.is_empty() {
                if let Some((n, d)) = parse_coefficient(p) {
                    num = num
                        .checked_mul(n)
                        .ok_or_else(|| parse_error(line, "coefficient overflow"))?;
                    den = den
                        .checked_mul(d)
                        .ok_or_else(|| parse_error(line, "coefficient overflow"))?;
                    continue;
                }
            }
            path.push(p.to_string());
        }
        terms.push(Term { num, den, path });
    }
    Ok(terms)
}

fn gcd(a: i64, b: i64) -> i64 {
    if b == 0 {
        a.abs().max(1)
    } else {
        gcd(b, a % b)
    }
}

/// Multiply all terms by the least common denominator, yielding integer
/// coefficients generating the same ideal.
fn clear_denominators(terms: &mut [Term], line: usize) -> Result<(), Error> {
    let mut lcm = 1i64;
    for t in terms.iter() {
        lcm = lcm / gcd(lcm, t.den) * t.den;
    }
    for t in terms.iter_mut() {
        t.num = t
            .num
            .checked_mul(lcm / t.den)
            .ok_or_else(|| parse_error(line, "coefficient overflow"))?;
        t.den = 1;
    }
    Ok(())
}

pub fn parse_spec(text: &str) -> Result<ParsedSpec, Error> {
    let mut field: Option<Field> = None;
    let mut vertices: Vec<String> = Vec::new();
    let mut arrows: Vec<Arrow> = Vec::new();
    let mut bound: Option<usize> = None;
    let mut relations: Vec<(usize, Vec<Term>)> = Vec::new();
    let mut automorphism_lines: Vec<(usize, String, String)> = Vec::new();

    for (idx, raw) in text.lines().enumerate() {
        let lineno = idx + 1;
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (key, rest) = line.split_once(char::is_whitespace).unwrap_or((line, ""));
        let rest = rest.trim();
        match key {
            "field" => {
                field = Some(match rest {
                    "Q" | "q" => Field::Rational,
                    p => {
                        let p: u32 = p
                            .parse()
                            .map_err(|_| parse_error(lineno, "field must be Q or a prime"))?;
                        if !is_prime(p) {
                            return Err(parse_error(lineno, format!("{p} is not prime")));
                        }
                        Field::Fp(p)
                    }
                });
            }
            "vertices" => {
                vertices = rest.split_whitespace().map(str::to_string).collect();
                if vertices.is_empty() {
                    return Err(parse_error(lineno, "vertices line needs at least one name"));
                }
            }
            "arrow" => {
                let parts: Vec<&str> = rest.split_whitespace().collect();
                if parts.len() < 3 || parts.len() > 4 {
                    return Err(parse_error(lineno, "arrow needs: name source target [degree]"));
                }
                let lookup = |name: &str| {
                    vertices
                        .iter()
                        .position(|v| v == name)
                        .ok_or_else(|| parse_error(lineno, format!("unknown vertex {name}")))
                };
                let degree = if parts.len() == 4 {
                    parts[3]
                        .parse()
                        .map_err(|_| parse_error(lineno, "degree must be an integer"))?
                } else {
                    0
                };
                arrows.push(Arrow {
                    name: parts[0].to_string(),
                    source: lookup(parts[1])?,
                    target: lookup(parts[2])?,
                    degree,
                });
            }
            "bound" => {
                bound = Some(
                    rest.parse()
                        .map_err(|_| parse_error(lineno, "bound must be a non-negative integer"))?,
                );
            }
            "relation" => {
                let mut terms = parse_expression(rest, lineno)?;
                clear_denominators(&mut terms, lineno)?;
                relations.push((lineno, terms));
            }
            "automorphism" => {
                let (lhs, rhs) = rest
                    .split_once("->")
                    .ok_or_else(|| parse_error(lineno, "automorphism needs `arrow -> expr`"))?;
                automorphism_lines.push((lineno, lhs.trim().to_string(), rhs.trim().to_string()));
            }
            other => return Err(parse_error(lineno, format!("unknown key {other}"))),
        }
    }

    let field = field.ok_or_else(|| parse_error(0, "missing field line"))?;
    if vertices.is_empty() {
        return Err(parse_error(0, "missing vertices line"));
    }
    let bound = bound.ok_or_else(|| parse_error(0, "missing bound line"))?;

    let arrow_names: Vec<String> = arrows.iter().map(|a| a.name.clone()).collect();
    let mut q = QuiverPresentation::new(field, vertices.clone(), arrows, bound);
    for (lineno, terms) in &relations {
        let mut rel: Vec<(i64, Vec<&str>)> = Vec::new();
        for t in terms {
            for name in &t.path {
                if !arrow_names.iter().any(|a| a == name) {
                    return Err(parse_error(*lineno, format!("unknown arrow {name} in relation")));
                }
            }
            rel.push((t.num, t.path.iter().map(String::as_str).collect()));
        }
        let borrowed: Vec<(i64, &[&str])> =
            rel.iter().map(|(c, p)| (*c, p.as_slice())).collect();
        q.relate(&borrowed);
    }
    let algebra = Algebra::from_presentation(&q)?;

    let automorphism = if automorphism_lines.is_empty() {
        None
    } else {
        Some(build_automorphism(&algebra, &automorphism_lines)?)
    };
    Ok(ParsedSpec { algebra, automorphism })
}

fn is_prime(p: u32) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u64;
    let p = p as u64;
    while d * d <= p {
        if p % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// Evaluate a signed path expression to an algebra element.
fn evaluate_expression(a: &Algebra, expr: &str, line: usize) -> Result<Vec<Scalar>, Error> {
    let field = a.field();
    let terms = parse_expression(expr, line)?;
    let gens: HashMap<&str, &Vec<Scalar>> =
        a.generators().iter().map(|(n, v)| (n.as_str(), v)).collect();
    let mut acc = vec![field.zero(); a.dim()];
    for t in terms {
        if t.path.is_empty() {
            return Err(parse_error(line, "constant terms are not allowed in images"));
        }
        let mut value: Option<Vec<Scalar>> = None;
        for name in &t.path {
            let g = gens
                .get(name.as_str())
                .ok_or_else(|| parse_error(line, format!("unknown arrow {name}")))?;
            value = Some(match value {
                None => (*g).clone(),
                Some(v) => a.mul_vec(&v, g),
            });
        }
        let coef = field
            .from_i64(t.num)
            .mul(&field.from_i64(t.den).inv().ok_or_else(|| {
                parse_error(line, "denominator vanishes in this field")
            })?);
        for (slot, x) in acc.iter_mut().zip(value.unwrap()) {
            *slot = slot.add(&coef.mul(&x));
        }
    }
    Ok(acc)
}

/// Build the automorphism from arrow images: idempotents are fixed, paths
/// map to the products of their arrow images.
fn build_automorphism(
    a: &Algebra,
    lines: &[(usize, String, String)],
) -> Result<AlgebraMorphism, Error> {
    let field = a.field();
    let mut images: HashMap<usize, Vec<Scalar>> = HashMap::new();
    for (lineno, arrow, expr) in lines {
        let gi = a
            .generators()
            .iter()
            .position(|(n, _)| n == arrow)
            .ok_or_else(|| parse_error(*lineno, format!("unknown arrow {arrow}")))?;
        images.insert(gi, evaluate_expression(a, expr, *lineno)?);
    }
    // unmapped arrows are fixed
    for (gi, (_, g)) in a.generators().iter().enumerate() {
        images.entry(gi).or_insert_with(|| g.clone());
    }
    let mut matrix = Matrix::zeros(field, a.dim(), a.dim());
    for i in 0..a.dim() {
        let fac = a.factorization(i)?;
        let img: Vec<Scalar> = if fac.is_empty() {
            let mut v = vec![field.zero(); a.dim()];
            v[i] = field.one();
            v
        } else {
            let mut value = images[&fac[0]].clone();
            for g in &fac[1..] {
                value = a.mul_vec(&value, &images[g]);
            }
            value
        };
        for (r, x) in img.into_iter().enumerate() {
            if !x.is_zero() {
                matrix.set(r, i, x);
            }
        }
    }
    let sigma = AlgebraMorphism { matrix };
    if !sigma.is_automorphism(a)? {
        return Err(Error::Unsupported(
            "the automorphism lines do not define an algebra automorphism".into(),
        ));
    }
    Ok(sigma)
}
