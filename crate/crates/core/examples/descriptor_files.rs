//! Descriptor and truth-table files, round-tripped through a temporary directory.

use designlab::circuits::{BooleanFunction, Circuit, Gate, SetDescriptor, SetKind};
use designlab::designs::phase_state_set;
use designlab::framepotential::frame_potential;

fn main() -> designlab::Result<()> {
    let dir = std::env::temp_dir().join(format!("designlab-example-{}", std::process::id()));
    std::fs::create_dir_all(&dir)?;

    let phase = phase_state_set(1, 8, 1)?;
    let path = dir.join("phase.json");
    phase.write_file(&path)?;
    println!("{}", std::fs::read_to_string(&path)?);

    let bell = SetDescriptor::explicit(
        SetKind::State,
        2,
        vec![Circuit::from_gates(2, vec![Gate::h(0), Gate::cnot(0, 1)])?, Circuit::new(2)],
    )?;
    let back = SetDescriptor::from_json(&bell.to_json())?;
    println!("explicit set round trip equal: {}, F_1 = {}", back == bell, frame_potential(&back, 1)?);

    let maj = BooleanFunction::majority(3)?;
    let tt = dir.join("maj3.tt");
    maj.write_file(&tt)?;
    let read = BooleanFunction::read_file(&tt)?;
    println!("truth table bytes {:02x?}, s(f) = {}", std::fs::read(&tt)?, read.sat_count());

    std::fs::remove_dir_all(&dir)?;
    Ok(())
}
