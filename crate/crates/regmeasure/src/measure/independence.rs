//! Probabilistic independence of star-free and group languages.

use crate::automata::{BoolOp, Dfa};
use crate::density::{density, BigRational};
use crate::error::{Error, Result};
use crate::monoid::syntactic_monoid;

/// Both sides of the product identity `δ(L ∩ K) = δ(L) · δ(K)`.
#[derive(Debug, Clone)]
pub struct IndependenceReport {
    pub lhs: BigRational,
    pub rhs: BigRational,
    pub equal: bool,
}

/// Check the independence identity for a star-free `l` and a group language
/// `k`. Preconditions are enforced: `l` must have an aperiodic syntactic
/// monoid and `k` a syntactic group. The identity must hold for such inputs;
/// the report carries both sides for diagnostics either way.
pub fn check_independence(l: &Dfa, k: &Dfa) -> Result<IndependenceReport> {
    let l_monoid = syntactic_monoid(l)?;
    if !l_monoid.monoid().is_aperiodic() {
        return Err(Error::NotStarFree(
            "left language has a non-aperiodic syntactic monoid".to_string(),
        ));
    }
    let k_monoid = syntactic_monoid(k)?;
    if !k_monoid.monoid().is_group() {
        return Err(Error::NotGroupLanguage(
            "right language's syntactic monoid is not a group".to_string(),
        ));
    }
    let lhs = density(&l.combine(k, BoolOp::And)?);
    let rhs = density(l) * density(k);
    let equal = lhs == rhs;
    Ok(IndependenceReport { lhs, rhs, equal })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::density::ratio;
    use crate::fixtures;

    #[test]
    fn contains_ab_with_parity() {
        let r = check_independence(
            &fixtures::contains_ab().unwrap(),
            &fixtures::balanced_mod(2).unwrap(),
        )
        .unwrap();
        assert_eq!(r.lhs, ratio(1, 2));
        assert_eq!(r.rhs, ratio(1, 2));
        assert!(r.equal);
    }

    #[test]
    fn starts_ab_with_parity() {
        let r = check_independence(
            &fixtures::starts_ab().unwrap(),
            &fixtures::balanced_mod(2).unwrap(),
        )
        .unwrap();
        assert_eq!(r.lhs, ratio(1, 8));
        assert!(r.equal);
    }

    #[test]
    fn universal_with_any_group_language() {
        let k = fixtures::balanced_mod(3).unwrap();
        let r = check_independence(&fixtures::universal().unwrap(), &k).unwrap();
        assert_eq!(r.lhs, ratio(1, 3));
        assert!(r.equal);
    }

    #[test]
    fn parity_is_not_star_free() {
        let p = fixtures::balanced_mod(2).unwrap();
        assert!(matches!(
            check_independence(&p, &p),
            Err(Error::NotStarFree(_))
        ));
    }

    #[test]
    fn non_group_right_side_is_rejected() {
        assert!(matches!(
            check_independence(
                &fixtures::contains_ab().unwrap(),
                &fixtures::starts_ab().unwrap()
            ),
            Err(Error::NotGroupLanguage(_))
        ));
    }
}
