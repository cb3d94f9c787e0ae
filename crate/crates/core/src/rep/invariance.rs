//! Exact verification that √3·R₂ is fixed by the image of (O/72O)* in
//! GL₂(Z/72Z), which is what makes t_n a class invariant.

use super::units::{self, UnitGroupElement};
use super::{full_action, FunctionVector};
use crate::error::{Error, Result};
use crate::sl2::{crt_combine, shimura_matrix, Mat2};

/// Result for one generator of (O/72O)*.
#[derive(Clone, Debug)]
pub struct GeneratorCheck {
    pub generator: UnitGroupElement,
    pub matrix: Mat2,
    pub d: i64,
    pub image: FunctionVector,
    pub fixed: bool,
}

/// Generating sets of (O/9O)* and (O/8O)* for C = (n+1)/4 ∈ {3, 9, 15}.
pub fn standard_generators(n_class: u32) -> Result<(i64, Vec<(i64, i64)>, Vec<(i64, i64)>)> {
    // (α, β) pairs for α + βθ
    let mod9 = vec![(4, 7), (5, 0)];
    let (c, mod8) = match n_class {
        11 => (3, vec![(0, 1), (7, 0), (7, 4)]),
        35 => (9, vec![(6, 5), (7, 0), (7, 4)]),
        59 => (15, vec![(0, 1), (7, 0), (7, 4)]),
        other => return Err(Error::InvalidClass(other)),
    };
    Ok((c, mod9, mod8))
}

/// The matrix in GL₂(Z/72Z) of a unit of O/9O (trivial mod 8) or of O/8O
/// (trivial mod 9), relative to the evaluation point (−1 + √−n)/2.
pub fn unit_matrix(g: &UnitGroupElement) -> Result<Mat2> {
    let a = shimura_matrix(g.alpha, g.beta, g.c);
    match g.modulus {
        9 => crt_combine(&Mat2::identity(8), &a.reduce(9)),
        8 => crt_combine(&a.reduce(8), &Mat2::identity(9)),
        m => Err(Error::UnsupportedModulus(m as u32)),
    }
}

pub fn check_generator(g: &UnitGroupElement, f: &FunctionVector) -> Result<GeneratorCheck> {
    let matrix = unit_matrix(g)?;
    let act = full_action(&matrix)?;
    let image = act.apply(f)?;
    Ok(GeneratorCheck {
        generator: *g,
        matrix,
        d: act.d,
        fixed: &image == f,
        image,
    })
}

fn check_all(gens: &[UnitGroupElement]) -> Result<Vec<GeneratorCheck>> {
    let f = FunctionVector::sqrt3_r2();
    gens.iter().map(|g| check_generator(g, &f)).collect()
}

/// Per-generator results for the standard generators of a class mod 72.
pub fn invariance_report(n_class: u32) -> Result<Vec<GeneratorCheck>> {
    let (c, mod9, mod8) = standard_generators(n_class)?;
    let mut gens = Vec::new();
    for (a, b) in mod9 {
        gens.push(UnitGroupElement::new(a, b, 9, c)?);
    }
    for (a, b) in mod8 {
        gens.push(UnitGroupElement::new(a, b, 8, c)?);
    }
    check_all(&gens)
}

/// True iff every standard generator fixes √3·R₂ exactly.
pub fn invariance_check(n_class: u32) -> Result<bool> {
    Ok(invariance_report(n_class)?.iter().all(|r| r.fixed))
}

/// The same check for a specific n, with generators of (O/8O)* and (O/9O)*
/// found by exhaustive search for C = (n+1)/4.
pub fn invariance_check_n(n: i64) -> Result<bool> {
    if n <= 0 || n.rem_euclid(24) != 11 {
        return Err(Error::InvalidN(n));
    }
    let c = (n + 1) / 4;
    let mut gens = units::find_generators(9, c)?;
    gens.extend(units::find_generators(8, c)?);
    Ok(check_all(&gens)?.iter().all(|r| r.fixed))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cyclo::CycNum;

    #[test]
    fn all_three_classes_are_invariant() {
        for class in [11, 35, 59] {
            let report = invariance_report(class).unwrap();
            assert_eq!(report.len(), 5);
            for r in &report {
                assert!(r.fixed, "class {class}, generator {}", r.generator);
            }
        }
        assert!(invariance_check(13).is_err());
    }

    #[test]
    fn unit_matrix_of_worked_example() {
        let g = UnitGroupElement::new(4, 7, 9, 3).unwrap();
        let m = unit_matrix(&g).unwrap();
        assert_eq!(m.reduce(8), Mat2::identity(8));
        assert_eq!(m.reduce(9), Mat2::new(4, 6, 7, 2, 9));
        assert_eq!(m.det().rem_euclid(72), 65);
    }

    #[test]
    fn literal_matrix_does_not_fix_the_invariant() {
        // (11, −21; 7, 4) is the unit against θ = (1 + √−n)/2; t_n is not
        // evaluated there, and the action moves √3·R₂ onto the R₅ axis.
        let a = crt_combine(&Mat2::identity(8), &Mat2::new(2, 6, 7, 4, 9)).unwrap();
        let image = full_action(&a).unwrap().apply(&FunctionVector::sqrt3_r2()).unwrap();
        assert_eq!(image.support(), vec![5]);
    }

    #[test]
    fn bare_r2_is_negated() {
        let g = UnitGroupElement::new(4, 7, 9, 3).unwrap();
        let r2 = FunctionVector::basis(2, CycNum::one());
        let r = check_generator(&g, &r2).unwrap();
        assert_eq!(r.d, 65);
        assert!(!r.fixed);
        assert_eq!(r.image, FunctionVector::basis(2, CycNum::from_integer(-1)));
    }

    #[test]
    fn searched_generators_agree_for_every_residue() {
        // C mod 8 and mod 9 depend on n mod 288
        for n in (11..11 + 288).step_by(24) {
            assert!(invariance_check_n(n).unwrap(), "n = {n}");
        }
        assert!(invariance_check_n(12).is_err());
    }
}
