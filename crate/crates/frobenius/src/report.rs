//! Report rendering: human-readable text and a flat machine-readable
//! `key=value` format mirroring [`EnhancementReport`].

use crate::algebra::Algebra;
use crate::check::EnhancementReport;
use crate::linalg::Field;

fn field_name(f: Field) -> String {
    match f {
        Field::Fp(p) => format!("F{p}"),
        Field::Rational => "Q".into(),
    }
}

/// Flat `key=value` lines, one record per line, stable key order.
pub fn machine_report(r: &EnhancementReport, a: &Algebra) -> String {
    let mut out = String::new();
    let mut push = |k: &str, v: String| {
        out.push_str(k);
        out.push('=');
        out.push_str(&v);
        out.push('\n');
    };
    push("name", r.name.clone());
    push("field", field_name(r.field));
    push("dim", r.dim.to_string());
    push("frobenius", r.frobenius.to_string());
    push("separable", r.separable.to_string());
    push(
        "omega3_dim",
        r.omega3_dim.map_or("unknown".into(), |d| d.to_string()),
    );
    push(
        "omega3_stripped_dim",
        r.omega3_stripped_dim.map_or("unknown".into(), |d| d.to_string()),
    );
    push("invertible", r.invertible.to_string());
    push(
        "status",
        if r.decided() { "decided".into() } else { "undetermined".into() },
    );
    push(
        "enhanced",
        match r.enhanced {
            Some(true) => "true".into(),
            Some(false) => "false".into(),
            None => "unknown".into(),
        },
    );
    for (gen, img) in r.sigma_images(a) {
        push(&format!("sigma.{gen}"), img);
    }
    out
}

/// Human-readable summary.
pub fn text_report(r: &EnhancementReport, a: &Algebra) -> String {
    let mut out = String::new();
    out.push_str(&format!(
        "{} over {} (dim {})\n",
        r.name,
        field_name(r.field),
        r.dim
    ));
    out.push_str(&format!("  self-injective: {}\n", r.frobenius));
    out.push_str(&format!("  separable:      {}\n", r.separable));
    if let Some(d) = r.omega3_dim {
        out.push_str(&format!(
            "  Ω³ dimension:   {d} (stripped: {})\n",
            r.omega3_stripped_dim.unwrap_or(d)
        ));
    }
    match r.enhanced {
        Some(true) => {
            out.push_str("  verdict: enhanced triangulated structure EXISTS\n");
            let images = r.sigma_images(a);
            if !images.is_empty() {
                out.push_str("  suspension twist σ:\n");
                for (gen, img) in images {
                    out.push_str(&format!("    σ({gen}) = {img}\n"));
                }
            }
        }
        Some(false) => {
            out.push_str("  verdict: NO enhanced triangulated structure\n");
        }
        None => {
            out.push_str("  verdict: undetermined (search budget exhausted)\n");
        }
    }
    out
}

/// Exit code contract: 0 decided, 2 undetermined.
pub fn exit_code(r: &EnhancementReport) -> i32 {
    if r.decided() {
        0
    } else {
        2
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::check::check_enhancement_named;
    use crate::examples;

    #[test]
    fn machine_report_is_flat_and_complete() {
        let a = examples::dual_numbers(Field::Fp(3), false).unwrap();
        let r = check_enhancement_named(&a, "dual_numbers", 200, 0).unwrap();
        let m = machine_report(&r, &a);
        for key in [
            "name=", "field=", "dim=", "frobenius=", "separable=", "omega3_dim=",
            "omega3_stripped_dim=", "invertible=", "status=", "enhanced=", "sigma.x=",
        ] {
            assert!(m.lines().any(|l| l.starts_with(key)), "missing {key} in:\n{m}");
        }
        assert!(m.contains("enhanced=true"));
        assert_eq!(exit_code(&r), 0);
    }

    #[test]
    fn text_report_mentions_verdict() {
        let a = examples::truncated_poly(Field::Fp(3), 3).unwrap();
        let r = check_enhancement_named(&a, "truncated_poly", 200, 0).unwrap();
        let t = text_report(&r, &a);
        assert!(t.contains("NO enhanced"));
    }
}
