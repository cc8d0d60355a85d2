use std::f64::consts::FRAC_1_SQRT_2;
use std::ffi::CStr;
use std::ptr;

use sqw_ffi::*;

fn last_error() -> String {
    let p = sqw_last_error_message();
    assert!(!p.is_null());
    unsafe { CStr::from_ptr(p) }.to_str().unwrap().to_string()
}

struct Handle(*mut SqwState);

impl Drop for Handle {
    fn drop(&mut self) {
        unsafe { sqw_state_free(self.0) };
    }
}

fn ok(status: SqwStatus) {
    assert_eq!(status, SqwStatus::Ok, "{}", last_error());
}

#[test]
fn version_is_the_crate_version() {
    let v = unsafe { CStr::from_ptr(sqw_version()) };
    assert_eq!(v.to_str().unwrap(), env!("CARGO_PKG_VERSION"));
}

#[test]
fn ie_state_round_trip() {
    let mut raw = ptr::null_mut();
    ok(unsafe { sqw_state_ie(&mut raw) });
    let ie = Handle(raw);

    let mut c = SqwCoeffs::default();
    ok(unsafe { sqw_state_coeffs(ie.0, &mut c) });
    assert_eq!((c.a, c.b, c.c, c.d), (1.0, -1.0 / 6.0, -1.0 / 6.0, -1.0 / 6.0));

    let mut conc = 0.0;
    ok(unsafe { sqw_state_concurrence_closed(ie.0, &mut conc) });
    assert!((conc - 2.0 / 3.0).abs() < 1e-12);
    ok(unsafe { sqw_state_concurrence_oracle(ie.0, &mut conc) });
    assert!((conc - 1.0 / 3.0).abs() < 1e-12);

    let mut values = [0.0; 4];
    ok(unsafe { sqw_state_eigenvalues(ie.0, values.as_mut_ptr()) });
    assert!(values[0].abs() < 1e-12 && values[1].abs() < 1e-12);
    assert!((values[2] - 0.5).abs() < 1e-7 && (values[3] - 0.5).abs() < 1e-7);

    let mut pure = true;
    ok(unsafe { sqw_state_is_pure(ie.0, &mut pure) });
    assert!(!pure);

    for axis in [SQW_AXIS_H1, SQW_AXIS_H2, SQW_AXIS_H3] {
        let mut raw = ptr::null_mut();
        ok(unsafe { sqw_state_measure(ie.0, axis, &mut raw) });
        let after = Handle(raw);
        let mut c2 = SqwCoeffs::default();
        ok(unsafe { sqw_state_coeffs(after.0, &mut c2) });
        assert_eq!(c2, c);
    }
}

#[test]
fn pure_states_from_t() {
    let mut raw = ptr::null_mut();
    ok(unsafe { sqw_state_from_t(0.0, &mut raw) });
    let s = Handle(raw);
    let mut c = SqwCoeffs::default();
    ok(unsafe { sqw_state_coeffs(s.0, &mut c) });
    assert_eq!((c.b, c.c, c.d), (0.0, -0.5, 0.0));

    let mut raw = ptr::null_mut();
    ok(unsafe { sqw_state_from_t(f64::NEG_INFINITY, &mut raw) });
    let s = Handle(raw);
    ok(unsafe { sqw_state_coeffs(s.0, &mut c) });
    assert_eq!((c.b, c.c, c.d), (-0.5, 0.0, 0.0));

    let mut raw = ptr::null_mut();
    assert_eq!(unsafe { sqw_state_from_t(f64::NAN, &mut raw) }, SqwStatus::InvalidArgument);
    assert!(raw.is_null());
}

#[test]
fn invalid_states_report_codes_and_messages() {
    let mut raw = ptr::null_mut();
    assert_eq!(unsafe { sqw_state_new(1.0, -0.5, -0.5, 0.5, &mut raw) }, SqwStatus::NotPsd);
    assert!(last_error().contains("positive semidefinite"));
    assert!(raw.is_null());

    assert_eq!(
        unsafe { sqw_state_new(1.0, 0.0, 0.0, 0.0, &mut raw) },
        SqwStatus::NormalizationViolated
    );
    assert_eq!(
        unsafe { sqw_state_new(1.0, 0.0, -0.5, 0.0, ptr::null_mut()) },
        SqwStatus::NullPointer
    );

    // The maximally mixed state is valid but has no closed form.
    ok(unsafe { sqw_state_new(0.5, 0.0, 0.0, 0.0, &mut raw) });
    let mixed = Handle(raw);
    let mut conc = -1.0;
    assert_eq!(
        unsafe { sqw_state_concurrence_closed(mixed.0, &mut conc) },
        SqwStatus::PreconditionViolated
    );
    ok(unsafe { sqw_state_concurrence_oracle(mixed.0, &mut conc) });
    assert_eq!(conc, 0.0);

    assert_eq!(
        unsafe { sqw_state_coeffs(ptr::null(), &mut SqwCoeffs::default()) },
        SqwStatus::NullPointer
    );
    unsafe { sqw_state_free(ptr::null_mut()) };
}

#[test]
fn gains() {
    let mut g = SqwGain::default();
    ok(unsafe { sqw_gain(SQW_AXIS_H1, 0.0, &mut g) });
    assert!((g.delta_c - FRAC_1_SQRT_2).abs() < 1e-15);
    assert_eq!(g.c_before, 0.0);

    ok(unsafe { sqw_maximize_gain(SQW_AXIS_H2, &mut g) });
    assert_eq!(g.t, f64::INFINITY);
    assert!((g.delta_c - FRAC_1_SQRT_2).abs() < 1e-12);

    ok(unsafe { sqw_maximize_gain(SQW_AXIS_H3, &mut g) });
    assert_eq!(g.t, 0.0);
    assert!((g.delta_c - 0.5).abs() < 1e-12);

    assert_eq!(unsafe { sqw_gain(7, 0.0, &mut g) }, SqwStatus::InvalidArgument);
    assert!(last_error().contains("axis"));
}

#[test]
fn oracle_on_raw_matrices() {
    let r = 0.5;
    let mut re = [0.0; 16];
    let im = [0.0; 16];
    for (i, j) in [(0, 0), (0, 3), (3, 0), (3, 3)] {
        re[4 * i + j] = r;
    }
    let mut c = 0.0;
    ok(unsafe { sqw_concurrence_oracle(re.as_ptr(), im.as_ptr(), &mut c) });
    assert!((c - 1.0).abs() < 1e-12);

    re[1] = f64::NAN;
    assert_eq!(
        unsafe { sqw_concurrence_oracle(re.as_ptr(), im.as_ptr(), &mut c) },
        SqwStatus::NonFinite
    );
    re[1] = 0.3;
    assert_eq!(
        unsafe { sqw_concurrence_oracle(re.as_ptr(), im.as_ptr(), &mut c) },
        SqwStatus::NotHermitian
    );
    assert_eq!(
        unsafe { sqw_concurrence_oracle(ptr::null(), im.as_ptr(), &mut c) },
        SqwStatus::NullPointer
    );
}

#[test]
fn errors_are_per_thread() {
    let mut g = SqwGain::default();
    assert_eq!(unsafe { sqw_gain(0, 0.0, &mut g) }, SqwStatus::InvalidArgument);
    std::thread::spawn(|| assert!(sqw_last_error_message().is_null()))
        .join()
        .unwrap();
}
