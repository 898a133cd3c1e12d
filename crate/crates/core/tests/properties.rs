mod common;

use common::*;
use proptest::prelude::*;

proptest! {
    #![proptest_config(config(0x5eed_0001))]
    #[test]
    fn polynomial_ring(a in polynomial(2), b in polynomial(2), c in polynomial(2)) {
        ring_axioms(&a, &b, &c)?;
    }
}

proptest! {
    #![proptest_config(config(0x5eed_0002))]
    #[test]
    fn weyl_action_is_a_homomorphism(a in weyl(2), b in weyl(2), p in polynomial(2)) {
        weyl_homomorphism(&a, &b, &p)?;
    }
}

proptest! {
    #![proptest_config(config(0x5eed_0003))]
    #[test]
    fn weyl_product_associates(a in weyl(2), b in weyl(2), c in weyl(2)) {
        weyl_associativity(&a, &b, &c)?;
    }
}

proptest! {
    #![proptest_config(config(0x5eed_0004))]
    #[test]
    fn fourier_is_multiplicative(a in weyl(3), b in weyl(3)) {
        fourier_homomorphism(&a, &b)?;
    }
}

proptest! {
    #![proptest_config(config(0x5eed_0005))]
    #[test]
    fn dpi_bracket_law_n3((x, y, p) in (gmatrix(3), gmatrix(3), bundle(3))) {
        dpi_bracket(&x, &y, &p)?;
    }
}

proptest! {
    #![proptest_config(config(0x5eed_0006))]
    #[test]
    fn dpi_bracket_law_n4((x, y, p) in (gmatrix(4), gmatrix(4), bundle(4))) {
        dpi_bracket(&x, &y, &p)?;
    }
}

proptest! {
    #![proptest_config(config(0x5eed_0007))]
    #[test]
    fn reflections((mu, nu, beta) in (weight(4), weight(4), root(4))) {
        reflection_laws(&mu, &nu, &beta)?;
    }
}
