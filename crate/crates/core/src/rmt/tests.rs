use super::*;
use crate::explicit::TestFunctionKind;

fn all_tfs() -> Vec<TestFunction> {
    let mut v = Vec::new();
    for kind in [TestFunctionKind::Fejer, TestFunctionKind::CosineSquared] {
        for sigma in [0.5, 0.9, 1.0, 1.4] {
            v.push(TestFunction::new(kind, sigma).unwrap());
        }
    }
    v
}

#[test]
fn kernels() {
    assert_eq!(kernel_k(1, 0.0, 0.0).unwrap(), 2.0);
    assert_eq!(kernel_k(-1, 0.0, 0.0).unwrap(), 0.0);
    for x in [-3.2, 0.0, 0.4, 7.0] {
        assert_eq!(kernel_k(0, x, x).unwrap(), 1.0);
    }
    assert!(kernel_k(2, 0.0, 0.0).is_err());
    // the diagonal of K_1 is W_SOeven
    for x in [0.1, 0.37, 2.5] {
        assert!((kernel_k(1, x, x).unwrap() - density_w(Group::SOeven).smooth(x)).abs() < 1e-15);
        assert!((kernel_k(-1, x, x).unwrap() - density_w(Group::Sp).smooth(x)).abs() < 1e-15);
    }
}

#[test]
fn table_values() {
    assert_eq!(density_w(Group::SOeven).smooth(0.0), 2.0);
    let o = density_w_hat(Group::O);
    assert_eq!((o.delta0, o.constant, o.coeff), (1.0, 0.5, 0.0));
    let se = density_w_hat(Group::SOeven);
    assert_eq!(se.smooth(1.0), 0.25);
    assert_eq!(se.smooth(1.5), 0.0);
    assert_eq!(se.smooth(0.3), 0.5);
    assert_eq!("SOodd".parse::<Group>().unwrap(), Group::SOodd);
}

#[test]
fn plancherel() {
    for g in Group::ALL {
        for tf in all_tfs() {
            let a = prediction_integral(g, &tf, Side::X);
            let b = prediction_integral(g, &tf, Side::Fourier);
            assert!((a - b).abs() < 1e-8, "{g} {tf:?}: {a} vs {b}");
        }
    }
    let f = TestFunction::fejer(1.0).unwrap();
    // phi(0) = phi_hat(0) = 1, so the pairing is 1 + 1/2
    assert_eq!(orthogonal_prediction(&f), 1.5);
    assert_eq!(prediction_integral(Group::U, &f, Side::Fourier), 1.0);
}

#[test]
fn orthogonal_is_average_of_special_orthogonal() {
    let mut state = 0x9e37_79b9_7f4a_7c15u64;
    let mut next = || {
        state ^= state << 13;
        state ^= state >> 7;
        state ^= state << 17;
        (state >> 11) as f64 / (1u64 << 53) as f64
    };
    for i in 0..20 {
        let kind = if i % 2 == 0 {
            TestFunctionKind::Fejer
        } else {
            TestFunctionKind::CosineSquared
        };
        let tf = TestFunction::new(kind, 0.2 + 1.8 * next()).unwrap();
        let o = prediction_integral(Group::O, &tf, Side::Fourier);
        let avg = 0.5
            * (prediction_integral(Group::SOeven, &tf, Side::Fourier)
                + prediction_integral(Group::SOodd, &tf, Side::Fourier));
        assert!((o - avg).abs() < 1e-10);
        assert!((o - (tf.phi_hat(0.0) + tf.phi(0.0) / 2.0)).abs() < 1e-15);
    }
}

#[test]
fn odd_minus_even_below_one() {
    for tf in all_tfs().into_iter().filter(|t| t.sigma < 1.0) {
        let d = prediction_integral(Group::SOodd, &tf, Side::Fourier)
            - prediction_integral(Group::SOeven, &tf, Side::Fourier);
        let want = tf.phi(0.0) - tf.phi_hat_integral(1.0);
        assert!((d - want).abs() < 1e-10);
    }
}
