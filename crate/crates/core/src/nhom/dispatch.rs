use super::{n_hom_with, Budget, NHomomorphism, SolveError};
use crate::rgp::{directed_path_order, label_class, LabelClass, Rgp};
use crate::unary::{classify_undirected_template, easy_certificate, solve_path_template, PathVerdict, UnaryError};

/// Which decision procedure answers a query.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Solver {
    /// The most specific applicable procedure.
    #[default]
    Auto,
    General,
    /// Directed-path templates with labels `s` and `s+`.
    Path,
    /// Undirected templates in a polynomial class.
    Undirected,
}

impl std::str::FromStr for Solver {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "auto" => Ok(Solver::Auto),
            "general" => Ok(Solver::General),
            "path" => Ok(Solver::Path),
            "undirected" => Ok(Solver::Undirected),
            _ => Err(format!("unknown solver `{s}`")),
        }
    }
}

/// Largest template the automatic dispatcher tries to classify; every
/// polynomial undirected class has at most two arcs.
const AUTO_UNDIRECTED_ARCS: usize = 2;

fn unary(p: &Rgp) -> bool {
    label_class(p) != LabelClass::General
}

fn not_applicable(e: UnaryError) -> SolveError {
    match e {
        UnaryError::Solve(e) => e,
        other => SolveError::NotApplicable(other.to_string()),
    }
}

pub fn solve(p: &Rgp, q: &Rgp, solver: Solver, budget: &Budget, jobs: usize) -> Result<Option<NHomomorphism>, SolveError> {
    let solver = match solver {
        Solver::Auto if unary(p) && unary(q) && directed_path_order(q).is_some() => Solver::Path,
        Solver::Auto
            if unary(p)
                && q.arc_count() <= AUTO_UNDIRECTED_ARCS
                && classify_undirected_template(q, false, budget).is_ok_and(|c| c.is_polynomial()) =>
        {
            Solver::Undirected
        }
        Solver::Auto => Solver::General,
        other => other,
    };
    match solver {
        Solver::Path => match solve_path_template(p, q).map_err(not_applicable)? {
            PathVerdict::Hom(h) => Ok(Some(h)),
            PathVerdict::NoHom(_) => Ok(None),
        },
        Solver::Undirected => {
            let class = classify_undirected_template(q, false, budget).map_err(not_applicable)?;
            easy_certificate(&class, p, q).map_err(not_applicable)
        }
        _ => n_hom_with(p, q, budget, jobs),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::nhom::verify_n_hom;

    #[test]
    fn auto_agrees_with_general() {
        let q = Rgp::build("a", &["a", "b", "c", "d", "e"], &[("e", "d", "a+"), ("d", "c", "a"), ("c", "b", "a+"), ("b", "a", "a")])
            .unwrap();
        let edge = Rgp::build("a", &["u", "v"], &[("u", "v", "a"), ("v", "u", "a")]).unwrap();
        let ps = [
            Rgp::build("a", &["x", "y", "z"], &[("x", "y", "a"), ("y", "z", "a+")]).unwrap(),
            Rgp::build("a", &["x", "y", "z"], &[("x", "y", "a"), ("y", "z", "a")]).unwrap(),
            Rgp::build("a", &["x", "y", "z"], &[("x", "y", "a"), ("y", "z", "a"), ("z", "x", "a")]).unwrap(),
        ];
        let b = Budget::default();
        for q in [&q, &edge] {
            for p in &ps {
                let auto = solve(p, q, Solver::Auto, &b, 1).unwrap();
                let general = solve(p, q, Solver::General, &b, 1).unwrap();
                assert_eq!(auto.is_some(), general.is_some());
                if let Some(h) = auto {
                    assert!(verify_n_hom(p, q, &h));
                }
            }
        }
    }

    #[test]
    fn forced_solver_reports_inapplicability() {
        let q = Rgp::build("ab", &["u", "v"], &[("u", "v", "b"), ("v", "u", "a")]).unwrap();
        let p = Rgp::build("ab", &["x"], &[]).unwrap();
        assert!(matches!(solve(&p, &q, Solver::Path, &Budget::default(), 1), Err(SolveError::NotApplicable(_))));
        assert!(matches!(solve(&p, &q, Solver::Undirected, &Budget::default(), 1), Err(SolveError::NotApplicable(_))));
    }
}
