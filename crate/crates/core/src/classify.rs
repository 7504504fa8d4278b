//! Δ, its decomposition d·e²·c³, the index m, the ramification case, the
//! conductor and the discriminant of L_n.

use alloc::string::ToString;
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::arith::{dec_from_factorization, factor, valuation_int, DeltaDecomposition, Factorization};
use crate::cubic_field::CubicField;
use crate::eisenstein::EisensteinInt;
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum CaseTag {
    /// 3 ∤ n1.
    T1,
    /// n1 = 3t, n2 ≡ −2t (mod 9).
    T2,
    /// n1 = 3t, n2 ≢ −2t (mod 9), t ≡ n2 (mod 3).
    W3i,
    /// n1 = 3t, t ≢ n2 (mod 3).
    W3ii,
}

impl CaseTag {
    pub const ALL: [CaseTag; 4] = [CaseTag::T1, CaseTag::T2, CaseTag::W3i, CaseTag::W3ii];

    pub fn is_wild(self) -> bool {
        matches!(self, CaseTag::W3i | CaseTag::W3ii)
    }

    /// `1`, `2`, `3i`, `3ii`.
    pub fn label(self) -> &'static str {
        match self {
            CaseTag::T1 => "1",
            CaseTag::T2 => "2",
            CaseTag::W3i => "3i",
            CaseTag::W3ii => "3ii",
        }
    }

    pub fn of(n1: &BigInt, n2: &BigInt) -> CaseTag {
        let three = BigInt::from(3);
        let (t, r) = n1.div_rem(&three);
        if !r.is_zero() {
            return CaseTag::T1;
        }
        if (n2 + &t * 2u32).mod_floor(&BigInt::from(9)).is_zero() {
            CaseTag::T2
        } else if (&t - n2).mod_floor(&three).is_zero() {
            CaseTag::W3i
        } else {
            CaseTag::W3ii
        }
    }
}

impl fmt::Display for CaseTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

impl FromStr for CaseTag {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        CaseTag::ALL
            .into_iter()
            .find(|t| t.label() == s)
            .ok_or_else(|| Error::PreconditionViolated(alloc::format!("unknown case tag {s:?}")))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FieldInvariants {
    pub n1: BigInt,
    pub n2: BigInt,
    pub delta: BigInt,
    pub delta_factorization: Factorization,
    pub dec: DeltaDecomposition,
    pub m: BigInt,
    pub tag: CaseTag,
    pub conductor: BigInt,
    pub discriminant: BigInt,
    /// n1 + 3n2(1 + ζ).
    pub a_n: EisensteinInt,
}

impl FieldInvariants {
    pub fn ec(&self) -> BigInt {
        &self.dec.e * &self.dec.c
    }

    pub fn de(&self) -> BigInt {
        &self.dec.d * &self.dec.e
    }
}

pub fn classify(field: &CubicField) -> Result<FieldInvariants> {
    let (n1, n2) = (field.n1().clone(), field.n2().clone());
    let delta = field.delta();
    let delta_factorization = factor(&delta);
    let dec = dec_from_factorization(&delta_factorization);
    let tag = CaseTag::of(&n1, &n2);
    let three = BigInt::from(3);
    let nine = BigInt::from(9);

    let v3 = |x: &BigInt| valuation_int(x, &three);
    let (vd, ve, vc) = (v3(&dec.d), v3(&dec.e), v3(&dec.c));
    let side_facts = match tag {
        CaseTag::T1 => vd == 0 && ve == 0 && vc == 0,
        CaseTag::T2 | CaseTag::W3i => vd == 0 && ve == 0 && vc == 1,
        CaseTag::W3ii => vd == 0 && ve == 1 && vc == 0,
    };
    if !side_facts {
        return Err(Error::InternalInconsistency(alloc::format!(
            "3-adic valuations of (d, e, c) = ({vd}, {ve}, {vc}) contradict case {tag}"
        )));
    }

    let m = match tag {
        CaseTag::T1 | CaseTag::W3i => dec.c.clone(),
        CaseTag::T2 | CaseTag::W3ii => &dec.c * 3u32,
    };
    let m_def = m_by_definition(&n1, &n2, &delta, &delta_factorization);
    if m != m_def {
        return Err(Error::InternalInconsistency(alloc::format!(
            "m = {m} from the case analysis but {m_def} by definition"
        )));
    }

    let de = &dec.d * &dec.e;
    let conductor = match tag {
        CaseTag::T1 | CaseTag::T2 => de,
        CaseTag::W3i => de * 9u32,
        CaseTag::W3ii => de * 3u32,
    };
    let discriminant = &conductor * &conductor;
    if tag.is_wild() != (&discriminant % &nine).is_zero() {
        return Err(Error::InternalInconsistency("wild case disagrees with 9 | D".to_string()));
    }

    let a_n = EisensteinInt::new(&n1 + &n2 * 3u32, &n2 * 3u32);
    if a_n.norm() != delta {
        return Err(Error::InternalInconsistency("N(A_n) ≠ Δ".to_string()));
    }

    Ok(FieldInvariants {
        n1,
        n2,
        delta,
        delta_factorization,
        dec,
        m,
        tag,
        conductor,
        discriminant,
        a_n,
    })
}

/// Largest m with m² | 3Δ and m³ | (2n1 + 3n2)Δ.
fn m_by_definition(n1: &BigInt, n2: &BigInt, delta: &BigInt, fac: &Factorization) -> BigInt {
    let s: BigInt = n1 * 2u32 + n2 * 3u32;
    let three = BigInt::from(3);
    let fac3 = fac.merge(&Factorization::from_pairs([(three, 1)]));
    let mut m = BigInt::one();
    for (p, e) in fac3.iter() {
        let by_square = e / 2;
        let k = if s.is_zero() {
            by_square
        } else {
            by_square.min((valuation_int(&s, p) + valuation_int(delta, p)) / 3)
        };
        m *= num_traits::pow(p.clone(), k as usize);
    }
    m
}

/// The associated order Z[G][e_m : m ∈ 𝒟(f)] in closed form.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrderDescription {
    pub order: &'static str,
    pub d_set: Vec<BigInt>,
}

pub fn associated_order_description(inv: &FieldInvariants) -> OrderDescription {
    let de = inv.de();
    match inv.tag {
        CaseTag::T1 | CaseTag::T2 => OrderDescription { order: "Z[G]", d_set: alloc::vec![de] },
        CaseTag::W3i => OrderDescription {
            order: "Z[G][(2-σ-σ^2)/3]",
            d_set: alloc::vec![&de * 9u32, &de * 3u32],
        },
        CaseTag::W3ii => OrderDescription {
            order: "Z[G][(2-σ-σ^2)/3]",
            d_set: alloc::vec![&de * 3u32, de],
        },
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn big(x: i64) -> BigInt {
        BigInt::from(x)
    }

    fn inv(n1: i64, n2: i64) -> FieldInvariants {
        classify(&CubicField::new(n1, n2).unwrap()).unwrap()
    }

    #[test]
    fn classify_examples() {
        let i = inv(1, 2);
        assert_eq!((i.delta, i.tag, i.m, i.discriminant), (big(43), CaseTag::T1, big(1), big(43 * 43)));

        let i = inv(6, 11);
        assert_eq!(i.delta, big(27 * 49));
        assert_eq!(i.tag, CaseTag::W3i);
        assert_eq!((i.dec.d, i.dec.e, i.dec.c), (big(1), big(7), big(3)));
        assert_eq!(i.m, big(3));
        assert_eq!(i.discriminant, big(81 * 49));

        let i = inv(3, 7);
        assert_eq!(i.delta, big(27 * 19));
        assert_eq!(i.tag, CaseTag::T2);
        assert_eq!((i.dec.d, i.dec.e, i.dec.c), (big(19), big(1), big(3)));
        assert_eq!(i.m, big(9));
        assert_eq!(i.discriminant, big(19 * 19));

        let i = inv(0, 1);
        assert_eq!((i.tag, i.m, i.discriminant), (CaseTag::W3ii, big(3), big(81)));
    }

    #[test]
    fn order_descriptions() {
        let d = associated_order_description(&inv(1, 2));
        assert_eq!((d.order, d.d_set), ("Z[G]", alloc::vec![big(43)]));
        let d = associated_order_description(&inv(6, 11));
        assert_eq!(d.d_set, alloc::vec![big(9 * 7), big(3 * 7)]);
        let d = associated_order_description(&inv(3, 5));
        assert_eq!(d.d_set, alloc::vec![big(3 * 93), big(93)]);
    }

    #[test]
    fn tag_labels_roundtrip() {
        for t in CaseTag::ALL {
            assert_eq!(t.label().parse::<CaseTag>().unwrap(), t);
        }
        assert!("4".parse::<CaseTag>().is_err());
    }

    fn valid_pair() -> impl Strategy<Value = (i64, i64)> {
        (-500i64..=500, 1i64..=500)
            .prop_filter("coprime", |(a, b)| a.gcd(b) == 1)
            .prop_filter("irreducible", |(a, b)| CubicField::new(*a, *b).is_ok())
    }

    proptest! {
        #[test]
        fn delta_is_positive((n1, n2) in (-10_000i64..=10_000, 1i64..=10_000)) {
            let d = big(n1 * n1 + 3 * n1 * n2 + 9 * n2 * n2);
            prop_assert!(d > BigInt::zero());
        }

        #[test]
        fn only_three_divides_delta_and_2n1_plus_3n2((n1, n2) in valid_pair()) {
            let i = inv(n1, n2);
            let mut g = i.delta.gcd(&big(2 * n1 + 3 * n2));
            while (&g % 3u32).is_zero() {
                g /= 3u32;
            }
            prop_assert!(g.is_one());
        }

        #[test]
        fn primes_of_delta_are_0_or_1_mod_3((n1, n2) in valid_pair()) {
            for p in inv(n1, n2).delta_factorization.primes() {
                let r = p % 3u32;
                prop_assert!(r.is_zero() || r.is_one());
            }
        }

        #[test]
        fn invariants_are_consistent((n1, n2) in valid_pair()) {
            let i = inv(n1, n2);
            prop_assert_eq!(&i.dec.d * &i.dec.e * &i.dec.e * &i.dec.c * &i.dec.c * &i.dec.c, i.delta.clone());
            prop_assert_eq!(i.a_n.norm(), i.delta.clone());
            prop_assert_eq!(&i.conductor * &i.conductor, i.discriminant.clone());
        }
    }
}
