//! Named example algebras used throughout the test suites and the CLI.

use crate::algebra::{Algebra, Arrow, QuiverPresentation};
use crate::error::Error;
use crate::linalg::Field;

/// Dual numbers `k[x]/(x²)`, optionally graded with `|x| = 1`.
pub fn dual_numbers(field: Field, graded: bool) -> Result<Algebra, Error> {
    truncated_poly_graded(field, 2, graded)
}

/// Truncated polynomials `k[x]/(xⁿ)` for `n ≥ 2`.
pub fn truncated_poly(field: Field, n: usize) -> Result<Algebra, Error> {
    truncated_poly_graded(field, n, false)
}

fn truncated_poly_graded(field: Field, n: usize, graded: bool) -> Result<Algebra, Error> {
    if n < 2 {
        return Err(Error::Unsupported("truncated_poly needs n ≥ 2".into()));
    }
    let mut q = QuiverPresentation::new(
        field,
        vec!["0".into()],
        vec![Arrow { name: "x".into(), source: 0, target: 0, degree: i64::from(graded) }],
        n,
    );
    let word = vec!["x"; n];
    q.relate(&[(1, &word)]);
    Algebra::from_presentation(&q)
}

/// The Nakayama algebra `N_m^n`: the oriented `m`-cycle truncated by
/// paths of length `n + 1`; dimension `m(n + 1)`.
pub fn nakayama(field: Field, m: usize, n: usize) -> Result<Algebra, Error> {
    if m == 0 {
        return Err(Error::Unsupported("nakayama needs m ≥ 1".into()));
    }
    let vertices = (0..m).map(|v| v.to_string()).collect();
    let arrows = (0..m)
        .map(|v| Arrow { name: format!("a{v}"), source: v, target: (v + 1) % m, degree: 0 })
        .collect();
    let mut q = QuiverPresentation::new(field, vertices, arrows, n + 1);
    for v in 0..m {
        let word: Vec<String> = (0..=n).map(|k| format!("a{}", (v + k) % m)).collect();
        let refs: Vec<&str> = word.iter().map(String::as_str).collect();
        q.relate(&[(1, &refs)]);
    }
    Algebra::from_presentation(&q)
}

/// The product field `kⁿ`: `n` isolated vertices, no arrows; separable.
pub fn product_field(field: Field, n: usize) -> Result<Algebra, Error> {
    if n == 0 {
        return Err(Error::Unsupported("product_field needs n ≥ 1".into()));
    }
    let vertices = (0..n).map(|v| v.to_string()).collect();
    let q = QuiverPresentation::new(field, vertices, vec![], 0);
    Algebra::from_presentation(&q)
}

/// The deformed preprojective algebra of Dynkin type `D₄` in
/// characteristic 2: four vertices `0, 1, 3` around the hub `2`, arrows
/// `a_i` into the hub (`a2` out of it) with reverses `b_i`, and five
/// relations.  Paths in the source compose left-to-right, so each
/// relation word below is the reverse of the function-composition order.
pub fn d4_deformed_preprojective(field: Field) -> Result<Algebra, Error> {
    if field != Field::Fp(2) {
        return Err(Error::Unsupported(
            "d4_deformed_preprojective is only defined in characteristic 2".into(),
        ));
    }
    let vertices = vec!["0".into(), "1".into(), "2".into(), "3".into()];
    let arrows = vec![
        Arrow { name: "a0".into(), source: 0, target: 2, degree: 0 },
        Arrow { name: "b0".into(), source: 2, target: 0, degree: 0 },
        Arrow { name: "a1".into(), source: 1, target: 2, degree: 0 },
        Arrow { name: "b1".into(), source: 2, target: 1, degree: 0 },
        Arrow { name: "a2".into(), source: 2, target: 3, degree: 0 },
        Arrow { name: "b2".into(), source: 3, target: 2, degree: 0 },
    ];
    let mut q = QuiverPresentation::new(field, vertices, arrows, 8);
    // loops at the outer vertices vanish
    q.relate(&[(1, &["a0", "b0"])]);
    q.relate(&[(1, &["a1", "b1"])]);
    q.relate(&[(1, &["b2", "a2"])]);
    // deformed mesh relation at the hub
    q.relate(&[
        (1, &["b0", "a0"]),
        (1, &["b1", "a1"]),
        (1, &["a2", "b2"]),
        (1, &["b0", "a0", "b1", "a1"]),
    ]);
    // the two length-4 hub loops commute
    q.relate(&[(1, &["b1", "a1", "b0", "a0"]), (1, &["b0", "a0", "b1", "a1"])]);
    Algebra::from_presentation(&q)
}

/// Build an example by name: `dual_numbers`, `truncated_poly` (param n),
/// `nakayama` (params m, n), `product_field` (param n),
/// `d4_deformed_preprojective`.
pub fn build_named_example(name: &str, field: Field, params: &[usize]) -> Result<Algebra, Error> {
    let need = |k: usize| -> Result<(), Error> {
        if params.len() == k {
            Ok(())
        } else {
            Err(Error::Unsupported(format!("example {name} expects {k} parameter(s)")))
        }
    };
    match name {
        "dual_numbers" => {
            need(0)?;
            dual_numbers(field, false)
        }
        "truncated_poly" => {
            need(1)?;
            truncated_poly(field, params[0])
        }
        "nakayama" => {
            need(2)?;
            nakayama(field, params[0], params[1])
        }
        "product_field" => {
            need(1)?;
            product_field(field, params[0])
        }
        "d4_deformed_preprojective" => {
            need(0)?;
            d4_deformed_preprojective(field)
        }
        other => Err(Error::Unsupported(format!("unknown example: {other}"))),
    }
}

/// All recognized example names.
pub const EXAMPLE_NAMES: &[&str] = &[
    "dual_numbers",
    "truncated_poly",
    "nakayama",
    "product_field",
    "d4_deformed_preprojective",
];

#[cfg(test)]
mod tests {
    use super::*;
    use std::sync::Arc;

    #[test]
    fn nakayama_dimension() {
        // dim N_m^n = m(n+1)
        for (m, n) in [(1usize, 1usize), (2, 2), (3, 1), (3, 3)] {
            let a = nakayama(Field::Fp(3), m, n).unwrap();
            assert_eq!(a.dim(), m * (n + 1));
            assert!(a.verify_associativity());
        }
    }

    #[test]
    fn product_field_is_separable() {
        let a = Arc::new(product_field(Field::Fp(3), 3).unwrap());
        assert_eq!(a.dim(), 3);
        let env = Arc::new(a.enveloping_algebra());
        let reg = crate::module::regular_bimodule(&env);
        assert!(crate::module::is_projective(&reg.module).unwrap());
    }

    #[test]
    fn d4_builds_and_is_selfinjective() {
        let a = d4_deformed_preprojective(Field::Fp(2)).unwrap();
        assert_eq!(a.dim(), 28);
        assert!(a.verify_associativity());
        assert!(a.verify_unit());
        assert!(a.is_selfinjective().unwrap());
        assert!(d4_deformed_preprojective(Field::Fp(3)).is_err());
    }

    #[test]
    fn named_dispatch() {
        assert_eq!(build_named_example("dual_numbers", Field::Fp(5), &[]).unwrap().dim(), 2);
        assert_eq!(
            build_named_example("nakayama", Field::Fp(3), &[2, 2]).unwrap().dim(),
            6
        );
        assert!(build_named_example("unknown", Field::Fp(3), &[]).is_err());
        assert!(build_named_example("nakayama", Field::Fp(3), &[1]).is_err());
    }
}
