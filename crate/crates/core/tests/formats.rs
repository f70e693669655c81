use designlab::circuits::{lrc_descriptor, BooleanFunction, Circuit, Gate, SetDescriptor, SetKind};
use designlab::designs::{clifford_set, computational_basis_set, pauli_set, phase_state_set, subset_phase_set, SubsetPhaseSpec};
use designlab::framepotential::frame_potential;
use designlab::numerics::random::stream_rng;
use designlab::reductions::{bqp_gadget, sfp_gadget, ufp_gadget};
use serde_json::json;

fn round_trip(d: &SetDescriptor) {
    let text = d.to_json();
    let back = SetDescriptor::from_json(&text).unwrap();
    assert_eq!(&back, d);
    assert_eq!(back.to_json(), text);
}

#[test]
fn every_resolver_round_trips() {
    let mut rng = stream_rng(1, 1);
    let gateset = vec![
        Circuit::from_gates(2, vec![Gate::cz(0, 1)]).unwrap(),
        Circuit::from_gates(2, vec![Gate::h(0), Gate::cnot(0, 1)]).unwrap(),
    ];
    let f = BooleanFunction::majority(2).unwrap();
    let sets = vec![
        computational_basis_set(2).unwrap(),
        pauli_set(1).unwrap(),
        clifford_set(1).unwrap(),
        phase_state_set(2, 7, 2).unwrap(),
        subset_phase_set(SubsetPhaseSpec::random(3, 4, 5, &mut rng).unwrap()).unwrap(),
        lrc_descriptor(3, 1, gateset, 9, None).unwrap(),
        SetDescriptor::explicit(SetKind::State, 2, vec![Circuit::from_gates(2, vec![Gate::phase(0.3, 1)]).unwrap()])
            .unwrap()
            .with_initial_state("01")
            .unwrap(),
        sfp_gadget(&f, &computational_basis_set(3).unwrap(), 1, None).unwrap().descriptor,
        ufp_gadget(&f, &pauli_set(3).unwrap(), 1, None).unwrap().descriptor,
        bqp_gadget(&Circuit::from_gates(2, vec![Gate::h(0)]).unwrap(), 1, 2).unwrap().instance.descriptor,
    ];
    for d in &sets {
        round_trip(d);
    }
}

#[test]
fn round_trip_preserves_frame_potential() {
    let d = phase_state_set(1, 5, 1).unwrap();
    let back = SetDescriptor::from_json(&d.to_json()).unwrap();
    assert_eq!(frame_potential(&d, 2).unwrap(), frame_potential(&back, 2).unwrap());
}

#[test]
fn hand_written_descriptors() {
    let text = json!({
        "kind": "state",
        "n": 1,
        "K": 2,
        "resolver": {"type": "explicit", "circuits": [
            {"n": 1, "gates": []},
            {"n": 1, "gates": [{"kind": "X", "targets": [0]}]}
        ]}
    })
    .to_string();
    let d = SetDescriptor::from_json(&text).unwrap();
    assert_eq!(frame_potential(&d, 1).unwrap(), 0.5);
}

#[test]
fn malformed_descriptors_are_rejected() {
    let bad = [
        r#"{"kind":"state","n":2,"K":3,"resolver":{"type":"basis"}}"#,
        r#"{"kind":"unitary","n":1,"K":4,"resolver":{"type":"basis"}}"#,
        r#"{"kind":"state","n":1,"K":2,"resolver":{"type":"phase","m":2}}"#,
        r#"{"kind":"state","n":1,"K":0,"resolver":{"type":"phase","m":1}}"#,
        r#"{"kind":"state","n":1,"K":1,"resolver":{"type":"explicit","circuits":[{"n":2,"gates":[]}]}}"#,
        r#"{"kind":"state","n":1,"K":1,"resolver":{"type":"nonsense"}}"#,
        r#"not json"#,
    ];
    for text in bad {
        assert!(SetDescriptor::from_json(text).is_err(), "accepted {text}");
    }
}

#[test]
fn truth_table_files() {
    let dir = tempfile::tempdir().unwrap();
    for n in [1, 3, 7, 10] {
        let f = BooleanFunction::from_fn(n, |x| x.count_ones() % 3 == 1).unwrap();
        let path = dir.path().join(format!("f{n}.tt"));
        f.write_file(&path).unwrap();
        let bytes = std::fs::read(&path).unwrap();
        assert_eq!(u64::from_le_bytes(bytes[..8].try_into().unwrap()), n as u64);
        assert_eq!(bytes.len(), 8 + (1usize << n).div_ceil(8));
        let back = BooleanFunction::read_file(&path).unwrap();
        assert_eq!(back, f);
        assert_eq!(back.sat_count(), f.sat_count());
        let via_json: BooleanFunction = serde_json::from_str(&serde_json::to_string(&f).unwrap()).unwrap();
        assert_eq!(via_json, f);
    }
    assert!(BooleanFunction::from_file_bytes(&[1, 0, 0]).is_err());
    let mut short = 4u64.to_le_bytes().to_vec();
    short.push(0xff);
    assert!(BooleanFunction::from_file_bytes(&short).is_err());
}

#[test]
fn csv_projection() {
    let report = json!({
        "command": "x",
        "F": 0.5,
        "bounds": [0.25, 1.0],
        "verdict": {"status": "INCONCLUSIVE"},
        "note": "a,b",
        "checks": [{"name": "dropped"}]
    });
    let csv = designlab::cli::to_csv(&report);
    let lines: Vec<&str> = csv.lines().collect();
    assert_eq!(lines[0], "F,bounds,command,note,verdict.status");
    assert_eq!(lines[1], "0.5,0.25;1.0,x,\"a,b\",INCONCLUSIVE");
}
