//! parse(print(x)) = x for every interchange type.

use conekit::gen;
use conekit::mpec::{check_multiplier_constancy, mpec_certificate_search, DEFAULT_SAMPLES};
use conekit::stationarity::{check_b_lin, lin_m_search, BOutcome};
use conekit::Error;
use conekit_cli::format::{
    CertificateBody, CertificateFile, ConeJson, LinearizedJson, MpecCertJson, MpecJson, ProblemFile,
    StationarityCertJson, UnionConeJson, UnionSetJson,
};
use proptest::prelude::*;
use serde::de::DeserializeOwned;
use serde::Serialize;

fn reparse<T: Serialize + DeserializeOwned>(x: &T) -> (T, String) {
    let s = serde_json::to_string_pretty(x).unwrap();
    let back: T = serde_json::from_str(&s).unwrap();
    (back, s)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn cones_sets_and_unions(seed in any::<u64>()) {
        let mut rng = gen::rng(seed);
        let c = gen::cone(&mut rng, 4, 6);
        let (back, _) = reparse(&ConeJson::from_cone(&c));
        prop_assert_eq!(back.to_cone().unwrap(), c.clone());
        // With neither constraints nor generators the input means the whole space.
        if !c.is_zero() {
            let gens_only = ConeJson { ineqs: vec![], eqs: vec![], ..ConeJson::from_cone(&c) };
            prop_assert_eq!(gens_only.to_cone().unwrap(), c);
        }

        let u = gen::union_cone(&mut rng, 3, 3);
        let (back, _) = reparse(&UnionConeJson::from_union(&u));
        prop_assert_eq!(back.to_union().unwrap(), u);

        let (s, _) = gen::union_set(&mut rng, 3, 3);
        let (back, text) = reparse(&UnionSetJson::from_set(&s));
        prop_assert_eq!(back.to_set().unwrap(), s.clone());
        prop_assert_eq!(serde_json::to_string_pretty(&UnionSetJson::from_set(&back.to_set().unwrap())).unwrap(), text);
    }

    #[test]
    fn problems_and_certificates(seed in any::<u64>()) {
        let mut rng = gen::rng(seed);
        let prob = gen::linearized_problem(&mut rng, 3, 3, 2);
        let file = ProblemFile::Linearized(LinearizedJson::from_problem(&prob));
        let (back, _) = reparse(&file);
        prop_assert_eq!(&back, &file);
        let ProblemFile::Linearized(l) = back else { unreachable!() };
        prop_assert_eq!(l.to_problem().unwrap(), prob.clone());

        if check_b_lin(&prob).unwrap() == BOutcome::Stationary {
            let cert = lin_m_search(&prob).unwrap();
            let f = CertificateFile::new(CertificateBody::Stationarity(StationarityCertJson::from_cert(&cert)));
            let (back, _) = reparse(&f);
            prop_assert_eq!(&back, &f);
            let CertificateBody::Stationarity(c) = back.certificate else { unreachable!() };
            prop_assert_eq!(c.to_cert().unwrap(), cert);
        }

        let inst = gen::mpec_instance(&mut rng);
        let file = ProblemFile::Mpec(MpecJson::from_instance(&inst));
        let (back, _) = reparse(&file);
        let ProblemFile::Mpec(mj) = back else { unreachable!() };
        prop_assert_eq!(mj.to_instance().unwrap(), inst.clone());

        match check_multiplier_constancy(&inst, DEFAULT_SAMPLES) {
            Err(Error::UnboundedMultiplierLp) => {}
            Ok(c) if c.lambda_tilde().is_some() => {
                if let Some(cert) = mpec_certificate_search(&inst, DEFAULT_SAMPLES).unwrap() {
                    let f = CertificateFile::new(CertificateBody::Mpec(MpecCertJson::from_cert(&cert)));
                    let (back, _) = reparse(&f);
                    prop_assert_eq!(&back, &f);
                    let CertificateBody::Mpec(c) = back.certificate else { unreachable!() };
                    prop_assert_eq!(c.to_cert().unwrap(), cert);
                }
            }
            other => { other.unwrap(); }
        }
    }
}

#[test]
fn integers_are_accepted_as_rationals() {
    let c: ConeJson = serde_json::from_str(r#"{"dim": 2, "ineqs": [[-1, "0"], ["0/5", "-3/3"]]}"#).unwrap();
    let printed = serde_json::to_string(&ConeJson::from_cone(&c.to_cone().unwrap())).unwrap();
    assert!(printed.contains(r#""ineqs":[["-1","0"],["0","-1"]]"#), "{printed}");
}

#[test]
fn schema_errors() {
    assert!(serde_json::from_str::<ConeJson>(r#"{"dim": 2, "ineqs": [["1/0", "0"]]}"#).is_err());
    assert!(serde_json::from_str::<ConeJson>(r#"{"dim": 2, "extra": 1}"#).is_err());
    assert!(serde_json::from_str::<ProblemFile>(r#"{"kind": "other"}"#).is_err());
    let short: ConeJson = serde_json::from_str(r#"{"dim": 2, "ineqs": [["1"]]}"#).unwrap();
    assert!(short.to_cone().is_err());
}
