"""Protocol orchestration for EPR-pair secret splitting.

Two modes are implemented over the same statevector register, public
transcript, and adversary seams:

* ``original`` -- the three-party protocol: the first agent prepares the
  singlet pairs, two Z/X correlation checks guard the transmissions, the
  dealer encodes her message with the four Paulis, and the third party
  reads the combined operations out with Bell measurements.
* ``improved`` -- the M-agent chain: the dealer prepares the pairs, each
  chain agent Hadamard-rotates fresh sample photons and Pauli-encrypts
  the rest, the dealer verifies the returned sequence with her own
  Hadamard-and-Bell check, and the final transmissions to the last agent
  are protected by four-state checking photons at secret positions.

A run is fully deterministic given (config, master seed): every random
choice comes from a stream spawned from the master seed in a fixed
order, so identical configs replay byte-identical transcripts.
"""

from __future__ import annotations

import dataclasses
import math
from dataclasses import dataclass, field
from typing import Any

import numpy as np

from .adversaries import (
    AdversarySpec,
    EveInterceptResend,
    SwapAttackImproved,
    SwapAttackOriginal,
    random_pauli,
)
from .pauli import (
    Basis,
    BellLabel,
    PauliOp,
    compose,
    decode_bell_to_pauli,
    decode_message,
    encode_message,
    expected_parity,
    recover_dealer_pauli,
)
from .register import PAULI_GATES, Register, SingleGate, SingleState


class ConfigError(ValueError):
    """A scenario or batch configuration is unusable."""


# ---------------------------------------------------------------------------
# configuration and reports


@dataclass(frozen=True)
class ScenarioConfig:
    protocol: str = "original"
    n_pairs: int = 64
    master_seed: int = 0
    agent_count: int = 2
    sample_fraction: float = 0.25
    step6_sample_count: int | None = None
    checking_photon_count: int = 8
    error_threshold: float = 0.0
    adversary: AdversarySpec = field(default_factory=AdversarySpec)

    def to_dict(self) -> dict[str, Any]:
        d = dataclasses.asdict(self)
        d["adversary"] = dataclasses.asdict(self.adversary)
        return d


@dataclass
class CheckReport:
    check_id: str
    samples: int
    mismatches: int
    threshold: float

    @property
    def error_rate(self) -> float:
        if self.samples == 0:
            return 0.0
        return self.mismatches / self.samples

    @property
    def verdict(self) -> str:
        # Empty-sample checks pass vacuously.
        return "pass" if self.error_rate <= self.threshold else "abort"

    def to_dict(self) -> dict[str, Any]:
        return {
            "check_id": self.check_id,
            "samples": self.samples,
            "mismatches": self.mismatches,
            "error_rate": self.error_rate,
            "verdict": self.verdict,
        }


class Transcript:
    """Append-only public log of classical announcements."""

    def __init__(self) -> None:
        self.events: list[dict[str, Any]] = []

    def append(self, kind: str, **payload: Any) -> None:
        self.events.append({"kind": kind, **payload})

    def to_list(self) -> list[dict[str, Any]]:
        return list(self.events)


@dataclass
class RunReport:
    config: ScenarioConfig
    checks: list[CheckReport]
    dealer_message: list[int]
    recovered: dict[str, list[int] | None]
    eavesdropper_message: list[int] | None
    detected: bool
    transcript: Transcript
    # Analysis-only data (per-position Paulis etc.); never serialized.
    extra: dict[str, Any] = field(default_factory=dict)

    def to_dict(self) -> dict[str, Any]:
        return {
            "config": self.config.to_dict(),
            "detected": self.detected,
            "checks": [c.to_dict() for c in self.checks],
            "dealer_message": _bits_str(self.dealer_message),
            "recovered": {
                party: (None if bits is None else _bits_str(bits))
                for party, bits in self.recovered.items()
            },
            "eavesdropper_message": (
                None
                if self.eavesdropper_message is None
                else _bits_str(self.eavesdropper_message)
            ),
        }


def _bits_str(bits: list[int]) -> str:
    return "".join(str(b) for b in bits)


# ---------------------------------------------------------------------------
# validation


def hop_names(config: ScenarioConfig) -> list[str]:
    if config.protocol == "original":
        return ["bob->alice", "bob->charlie", "alice->charlie"]
    m = config.agent_count
    hops = ["alice->agent0"]
    hops += [f"agent{k}->agent{k + 1}" for k in range(m - 2)]
    hops += [f"agent{m - 2}->alice", "alice->zach:t", "alice->zach:a"]
    return hops


def _sample_size(pool: int, fraction: float) -> int:
    return min(pool, max(1, math.ceil(fraction * pool)))


def validate_config(config: ScenarioConfig) -> None:
    """Raise ConfigError if the scenario cannot run to completion."""
    if config.protocol not in ("original", "improved"):
        raise ConfigError(f"unknown protocol {config.protocol!r}")
    if config.n_pairs < 2:
        raise ConfigError("n_pairs must be at least 2")
    if not 0.0 < config.sample_fraction < 1.0:
        raise ConfigError("sample_fraction must lie in (0, 1)")
    if not 0.0 <= config.error_threshold <= 1.0:
        raise ConfigError("error_threshold must lie in [0, 1]")
    if config.checking_photon_count < 0:
        raise ConfigError("checking_photon_count must be non-negative")
    if config.protocol == "improved" and config.agent_count < 2:
        raise ConfigError("improved protocol needs at least 2 agents")
    if config.step6_sample_count is not None and config.step6_sample_count < 1:
        raise ConfigError("step6_sample_count must be positive when given")

    remaining = config.n_pairs
    if config.protocol == "original":
        for _ in range(3):
            q = _sample_size(remaining, config.sample_fraction)
            remaining -= q
    else:
        remaining -= _sample_size(remaining, config.sample_fraction)  # step 2
        for k in range(config.agent_count - 1):
            last = k == config.agent_count - 2
            if last and config.step6_sample_count is not None:
                q = config.step6_sample_count
                if q > remaining:
                    raise ConfigError(
                        "step6_sample_count exceeds the surviving positions"
                    )
            else:
                q = _sample_size(remaining, config.sample_fraction)
            remaining -= q
    if remaining < 1:
        raise ConfigError("sampling would leave no message positions")

    adv = config.adversary
    if adv.kind == "eve_intercept_resend" and adv.hop not in hop_names(config):
        raise ConfigError(
            f"adversary hop {adv.hop!r} is not a hop of this protocol; "
            f"valid hops: {hop_names(config)}"
        )


# ---------------------------------------------------------------------------
# shared machinery


_BASES = (Basis.Z, Basis.X)
_DECOY_STATES = (SingleState.ZERO, SingleState.ONE, SingleState.PLUS, SingleState.MINUS)


def _transmit(
    hop: str,
    photons: list[int],
    eve: EveInterceptResend | None,
    transcript: Transcript,
) -> list[int]:
    transcript.append("transmit", hop=hop, count=len(photons))
    if eve is not None and eve.hop == hop:
        return eve.intercept_sequence(photons)
    return photons


def _transmit_map(
    hop: str,
    photons: dict[int, int],
    eve: EveInterceptResend | None,
    transcript: Transcript,
) -> dict[int, int]:
    order = sorted(photons)
    out = _transmit(hop, [photons[p] for p in order], eve, transcript)
    return dict(zip(order, out))


def _draw_positions(
    rng: np.random.Generator,
    pool: list[int],
    fraction: float,
    count: int | None = None,
) -> list[int]:
    if count is None:
        count = _sample_size(len(pool), fraction)
    picked = rng.choice(np.array(sorted(pool)), size=count, replace=False)
    return sorted(int(p) for p in picked)


def zx_check(
    check_id: str,
    positions: list[int],
    remote_photons: dict[int, int],
    local_photons: dict[int, int],
    expected: dict[int, PauliOp],
    register: Register,
    rng_remote: np.random.Generator,
    transcript: Transcript,
    threshold: float,
    remote_applies_h: bool = False,
) -> CheckReport:
    """Z/X correlation check over sampled singlet pairs.

    For each sampled position the remote party measures its photon in a
    random basis and announces basis and result; the local party measures
    the partner in the same basis.  The outcome parity must match the
    Bell correlation of the pair's announced Pauli shift."""
    mismatches = 0
    for pos in sorted(positions):
        if remote_applies_h:
            register.apply_gate(remote_photons[pos], SingleGate.H)
        basis = _BASES[int(rng_remote.random() < 0.5)]
        remote_out = register.measure_single(remote_photons[pos], basis)
        transcript.append(
            "zx_remote",
            check=check_id,
            position=pos,
            basis=basis.value,
            result=remote_out,
        )
        local_out = register.measure_single(local_photons[pos], basis)
        transcript.append(
            "zx_local", check=check_id, position=pos, result=local_out
        )
        if (remote_out ^ local_out) != expected_parity(expected[pos], basis):
            mismatches += 1
    report = CheckReport(check_id, len(positions), mismatches, threshold)
    transcript.append("check_report", **report.to_dict())
    return report


def decoy_round(
    check_id: str,
    register: Register,
    rng_dealer: np.random.Generator,
    count: int,
    payload: list[int],
    hop: str,
    eve: EveInterceptResend | None,
    transcript: Transcript,
    threshold: float,
) -> tuple[CheckReport, list[int]]:
    """Send `payload` photons with `count` checking photons mixed in at
    secret positions; after transit, announce positions and preparation
    bases, measure the checking photons, and compare with preparation.

    Returns the check report and the payload photons (ids may have been
    replaced in transit) in their original order."""
    states = [_DECOY_STATES[int(rng_dealer.integers(4))] for _ in range(count)]
    decoys = [register.prepare_single(s) for s in states]
    total = len(payload) + count
    slots = set(
        int(i) for i in rng_dealer.choice(total, size=count, replace=False)
    )
    sequence: list[int] = []
    kinds: list[int] = []  # index into payload (>=0) or decoy (-1-k)
    pi, di = 0, 0
    for slot in range(total):
        if slot in slots:
            sequence.append(decoys[di])
            kinds.append(-1 - di)
            di += 1
        else:
            sequence.append(payload[pi])
            kinds.append(pi)
            pi += 1
    received = _transmit(hop, sequence, eve, transcript)
    transcript.append(
        "decoy_positions",
        check=check_id,
        slots=sorted(slots),
        bases=[s.basis.value for s in states],
    )
    mismatches = 0
    out_payload = list(payload)
    for slot, photon in enumerate(received):
        k = kinds[slot]
        if k >= 0:
            out_payload[k] = photon
            continue
        state = states[-1 - k]
        outcome = register.measure_single(photon, state.basis)
        transcript.append(
            "decoy_result", check=check_id, slot=slot, result=outcome
        )
        if outcome != state.bit:
            mismatches += 1
    report = CheckReport(check_id, count, mismatches, threshold)
    transcript.append("check_report", **report.to_dict())
    return report, out_payload


def verify_step6(
    positions: list[int],
    published: dict[int, PauliOp],
    dealer_photons: dict[int, int],
    returned_photons: dict[int, int],
    register: Register,
    transcript: Transcript,
    threshold: float,
) -> CheckReport:
    """The dealer's own verification of the returned sequence.

    For each sampled position the dealer undoes the last agent's
    Hadamard, Bell-measures the returned photon against its retained
    partner, and requires the decoded Pauli to equal the XOR of the
    agents' published operations."""
    mismatches = 0
    outcomes: dict[int, str] = {}
    for pos in sorted(positions):
        register.apply_gate(returned_photons[pos], SingleGate.H)
        outcome = register.measure_bell(dealer_photons[pos], returned_photons[pos])
        outcomes[pos] = outcome.name
        if decode_bell_to_pauli(outcome) != published[pos]:
            mismatches += 1
    report = CheckReport("step6_check", len(positions), mismatches, threshold)
    transcript.append("bell_outcomes", check="step6_check", outcomes=outcomes)
    transcript.append("check_report", **report.to_dict())
    return report


def _spawn_streams(master_seed: int, n_parties: int):
    children = np.random.SeedSequence(master_seed).spawn(3 + n_parties)
    register = Register(rng=np.random.default_rng(children[0]))
    rng_dealer = np.random.default_rng(children[1])
    rng_adv = np.random.default_rng(children[2])
    rng_parties = [np.random.default_rng(c) for c in children[3:]]
    return register, rng_dealer, rng_adv, rng_parties


# ---------------------------------------------------------------------------
# original three-party protocol


def run_original(config: ScenarioConfig) -> RunReport:
    """One run of the original protocol (dealer Alice, agents Bob and
    Charlie) against the configured adversary."""
    validate_config(config)
    if config.protocol != "original":
        raise ConfigError("run_original needs protocol='original'")
    register, rng_alice, rng_adv, (rng_bob, rng_charlie) = _spawn_streams(
        config.master_seed, 2
    )
    transcript = Transcript()
    checks: list[CheckReport] = []
    threshold = config.error_threshold
    adv = config.adversary
    eve = (
        EveInterceptResend(register, rng_adv, adv)
        if adv.kind == "eve_intercept_resend"
        else None
    )
    attack = (
        SwapAttackOriginal(register, rng_adv, adv)
        if adv.kind == "bob_swap_attack"
        else None
    )

    def finish(
        recovered: list[int] | None,
        eav: list[int] | None,
        dealer_bits: list[int],
        extra: dict[str, Any],
    ) -> RunReport:
        detected = any(c.verdict == "abort" for c in checks)
        return RunReport(
            config=config,
            checks=checks,
            dealer_message=dealer_bits,
            recovered={"charlie": recovered},
            eavesdropper_message=eav,
            detected=detected,
            transcript=transcript,
            extra=extra,
        )

    n = config.n_pairs
    s_alice: dict[int, int] = {}
    s_bob: dict[int, int] = {}
    for pos in range(n):
        a, c = register.prepare_bell(BellLabel.PSI_MINUS)
        s_alice[pos] = a
        s_bob[pos] = c
    transcript.append("prepare", party="bob", pairs=n)

    s_alice = _transmit_map("bob->alice", s_alice, eve, transcript)
    transcript.append("receipt", party="alice", hop="bob->alice")

    positions = list(range(n))

    # First eavesdropping check (Alice-Bob).
    q1 = _draw_positions(rng_alice, positions, config.sample_fraction)
    transcript.append("sample_positions", check="zx_check_1", positions=q1)
    rep1 = zx_check(
        "zx_check_1",
        q1,
        s_bob,
        s_alice,
        {p: PauliOp.I for p in q1},
        register,
        rng_bob,
        transcript,
        threshold,
    )
    checks.append(rep1)
    positions = [p for p in positions if p not in set(q1)]
    for p in q1:
        del s_alice[p], s_bob[p]
    if rep1.verdict == "abort":
        return finish(None, None, [], {})

    # Bob encrypts his sequence and sends it to Charlie -- or substitutes
    # halves of his own pairs.
    bob_ops: dict[int, PauliOp] = {}
    if attack is not None:
        s_charlie = attack.on_send_to_third_party(s_bob)
    else:
        for pos in sorted(positions):
            op = random_pauli(rng_bob)
            bob_ops[pos] = op
            register.apply_gate(s_bob[pos], PAULI_GATES[op])
        s_charlie = dict(s_bob)
    s_charlie = _transmit_map("bob->charlie", s_charlie, eve, transcript)
    transcript.append("receipt", party="charlie", hop="bob->charlie")

    # Second eavesdropping check (Alice-Charlie), with Bob's operations
    # published first.
    q2 = _draw_positions(rng_alice, positions, config.sample_fraction)
    transcript.append("sample_positions", check="zx_check_2", positions=q2)
    if attack is not None:
        announced = attack.on_check_positions_announced(q2)
    else:
        announced = {p: bob_ops[p] for p in q2}
    transcript.append(
        "publish_ops",
        check="zx_check_2",
        party="bob",
        ops={p: announced[p].name for p in sorted(announced)},
    )
    rep2 = zx_check(
        "zx_check_2",
        q2,
        s_charlie,
        s_alice,
        announced,
        register,
        rng_charlie,
        transcript,
        threshold,
    )
    checks.append(rep2)
    positions = [p for p in positions if p not in set(q2)]
    for p in q2:
        del s_alice[p], s_charlie[p]
    if rep2.verdict == "abort":
        return finish(None, None, [], {})

    # Alice picks her own samples, encodes the message elsewhere, and
    # sends her sequence to Charlie.
    q3 = _draw_positions(rng_alice, positions, config.sample_fraction)
    message_positions = [p for p in positions if p not in set(q3)]
    dealer_bits = [int(b) for b in rng_alice.integers(2, size=2 * len(message_positions))]
    message_ops = dict(zip(message_positions, encode_message(dealer_bits)))
    alice_ops: dict[int, PauliOp] = {}
    for pos in sorted(positions):
        op = message_ops[pos] if pos in message_ops else random_pauli(rng_alice)
        alice_ops[pos] = op
        register.apply_gate(s_alice[pos], PAULI_GATES[op])

    if attack is not None:
        forwarded = attack.on_intercept_dealer_sequence(s_alice)
    else:
        forwarded = s_alice
    forwarded = _transmit_map("alice->charlie", forwarded, eve, transcript)
    transcript.append("receipt", party="charlie", hop="alice->charlie")

    # Charlie's Bell readout over every surviving position.
    totals: dict[int, PauliOp] = {}
    for pos in sorted(positions):
        outcome = register.measure_bell(forwarded[pos], s_charlie[pos])
        totals[pos] = decode_bell_to_pauli(outcome)

    # Final sample check: Charlie's outcomes against Alice's and Bob's
    # announced operations.
    transcript.append("sample_positions", check="final_sample_check", positions=q3)
    transcript.append(
        "bell_outcomes",
        check="final_sample_check",
        outcomes={p: totals[p].name for p in q3},
    )
    published_final: dict[int, PauliOp] = {}
    for pos in q3:
        published_final[pos] = (
            attack.check_op(pos) if attack is not None else bob_ops[pos]
        )
    transcript.append(
        "publish_ops",
        check="final_sample_check",
        party="bob",
        ops={p: published_final[p].name for p in q3},
    )
    mism = sum(
        1
        for pos in q3
        if totals[pos] != compose(alice_ops[pos], published_final[pos])
    )
    rep3 = CheckReport("final_sample_check", len(q3), mism, threshold)
    transcript.append("check_report", **rep3.to_dict())
    checks.append(rep3)
    extra = {
        "totals": totals,
        "alice_ops": alice_ops,
        "bob_ops": bob_ops,
        "message_positions": message_positions,
    }
    if rep3.verdict == "abort":
        return finish(None, None, dealer_bits, extra)

    # Collaboration: Bob publishes his operations on the message
    # positions and Charlie decodes.
    transcript.append("collaboration_positions", positions=message_positions)
    collab: dict[int, PauliOp] = {}
    for pos in message_positions:
        collab[pos] = (
            attack.published_op(pos) if attack is not None else bob_ops[pos]
        )
    transcript.append(
        "publish_ops",
        check="collaboration",
        party="bob",
        ops={p: collab[p].name for p in message_positions},
    )
    recovered_ops = [
        recover_dealer_pauli(totals[pos], [collab[pos]]) for pos in message_positions
    ]
    recovered_bits = decode_message(recovered_ops)
    transcript.append("recovered", party="charlie", bits=_bits_str(recovered_bits))

    eav_bits = None
    if attack is not None:
        eav_bits = decode_message([attack.inferred[p] for p in message_positions])
    extra["collab_ops"] = collab
    return finish(recovered_bits, eav_bits, dealer_bits, extra)


# ---------------------------------------------------------------------------
# improved M-agent protocol


def run_improved(config: ScenarioConfig) -> RunReport:
    """One run of the improved protocol with agent_count agents; agent 0
    is the first chain agent, agent M-2 the last one before the sequence
    returns to the dealer, and agent M-1 the final receiver."""
    validate_config(config)
    if config.protocol != "improved":
        raise ConfigError("run_improved needs protocol='improved'")
    m = config.agent_count
    register, rng_alice, rng_adv, rng_agents = _spawn_streams(config.master_seed, m)
    transcript = Transcript()
    checks: list[CheckReport] = []
    threshold = config.error_threshold
    adv = config.adversary
    eve = (
        EveInterceptResend(register, rng_adv, adv)
        if adv.kind == "eve_intercept_resend"
        else None
    )
    attack = (
        SwapAttackImproved(register, rng_adv, adv)
        if adv.kind == "bob_swap_attack"
        else None
    )

    def finish(
        recovered: list[int] | None, dealer_bits: list[int], extra: dict[str, Any]
    ) -> RunReport:
        detected = any(c.verdict == "abort" for c in checks)
        return RunReport(
            config=config,
            checks=checks,
            dealer_message=dealer_bits,
            recovered={"zach": recovered},
            eavesdropper_message=None,
            detected=detected,
            transcript=transcript,
            extra=extra,
        )

    n = config.n_pairs
    s_alice: dict[int, int] = {}
    s_travel: dict[int, int] = {}
    for pos in range(n):
        a, t = register.prepare_bell(BellLabel.PSI_MINUS)
        s_alice[pos] = a
        s_travel[pos] = t
    transcript.append("prepare", party="alice", pairs=n)

    s_travel = _transmit_map("alice->agent0", s_travel, eve, transcript)
    transcript.append("receipt", party="agent0", hop="alice->agent0")

    positions = list(range(n))

    # Step 2: Z/X check between the dealer and the first agent.
    q = _draw_positions(rng_alice, positions, config.sample_fraction)
    transcript.append("sample_positions", check="zx_check_step2", positions=q)
    rep = zx_check(
        "zx_check_step2",
        q,
        s_travel,
        s_alice,
        {p: PauliOp.I for p in q},
        register,
        rng_agents[0],
        transcript,
        threshold,
    )
    checks.append(rep)
    positions = [p for p in positions if p not in set(q)]
    for p in q:
        del s_alice[p], s_travel[p]
    if rep.verdict == "abort":
        return finish(None, [], {})

    # Steps 3-6: the encryption chain through agents 0..M-2.
    agent_ops: list[dict[int, PauliOp]] = [dict() for _ in range(m)]

    for k in range(m - 1):
        last_chain_agent = k == m - 2
        if last_chain_agent and config.step6_sample_count is not None:
            samples = _draw_positions(
                rng_agents[k], positions, config.sample_fraction,
                count=config.step6_sample_count,
            )
        else:
            samples = _draw_positions(rng_agents[k], positions, config.sample_fraction)
        sample_set = set(samples)

        if k == 0 and attack is not None:
            s_travel = attack.on_forward(s_travel, samples)
        else:
            for pos in sorted(positions):
                if pos in sample_set:
                    register.apply_gate(s_travel[pos], SingleGate.H)
                else:
                    op = random_pauli(rng_agents[k])
                    agent_ops[k][pos] = op
                    register.apply_gate(s_travel[pos], PAULI_GATES[op])

        hop = f"agent{k}->agent{k + 1}" if not last_chain_agent else f"agent{k}->alice"
        s_travel = _transmit_map(hop, s_travel, eve, transcript)
        transcript.append("receipt", hop=hop)
        transcript.append(
            "sample_positions",
            check=f"hop_check_{k}" if not last_chain_agent else "step6_check",
            positions=samples,
        )

        # Publication of earlier agents' operations on the sampled photons.
        published: dict[int, PauliOp] = {p: PauliOp.I for p in samples}
        pub_log: dict[int, dict[int, str]] = {}
        publishers = range(k) if not last_chain_agent else range(m - 2)
        for j in publishers:
            for pos in samples:
                if j == 0 and attack is not None:
                    op = (
                        attack.publish_for_hop_check(pos)
                        if not last_chain_agent
                        else attack.publish_for_step6(pos)
                    )
                else:
                    op = agent_ops[j].get(pos, PauliOp.I)
                published[pos] = compose(published[pos], op)
                pub_log.setdefault(j, {})[pos] = op.name
        if pub_log:
            transcript.append(
                "publish_ops",
                check=f"hop_check_{k}" if not last_chain_agent else "step6_check",
                ops={f"agent{j}": ops for j, ops in pub_log.items()},
            )

        if not last_chain_agent:
            # The receiving agent undoes the Hadamard and the pair is
            # checked with the usual Z/X procedure.
            rep = zx_check(
                f"hop_check_{k}",
                samples,
                s_travel,
                s_alice,
                published,
                register,
                rng_agents[k + 1],
                transcript,
                threshold,
                remote_applies_h=True,
            )
        else:
            rep = verify_step6(
                samples, published, s_alice, s_travel, register, transcript, threshold
            )
        checks.append(rep)
        positions = [p for p in positions if p not in sample_set]
        for p in samples:
            del s_alice[p], s_travel[p]
        if rep.verdict == "abort":
            return finish(None, [], {"agent_ops": agent_ops})

    # Step 7: message encoding and checking photons.
    message_positions = sorted(positions)
    dealer_bits = [int(b) for b in rng_alice.integers(2, size=2 * len(message_positions))]
    alice_ops = dict(zip(message_positions, encode_message(dealer_bits)))
    for pos in message_positions:
        register.apply_gate(s_alice[pos], PAULI_GATES[alice_ops[pos]])

    # Steps 7-9: both sequences go to the last agent behind checking photons.
    travel_order = [s_travel[p] for p in message_positions]
    rep_t, travel_order = decoy_round(
        "decoy_check_t",
        register,
        rng_alice,
        config.checking_photon_count,
        travel_order,
        "alice->zach:t",
        eve,
        transcript,
        threshold,
    )
    checks.append(rep_t)
    s_travel = dict(zip(message_positions, travel_order))
    extra = {
        "agent_ops": agent_ops,
        "alice_ops": alice_ops,
        "message_positions": message_positions,
    }
    if rep_t.verdict == "abort":
        return finish(None, dealer_bits, extra)

    alice_order = [s_alice[p] for p in message_positions]
    rep_a, alice_order = decoy_round(
        "decoy_check_a",
        register,
        rng_alice,
        config.checking_photon_count,
        alice_order,
        "alice->zach:a",
        eve,
        transcript,
        threshold,
    )
    checks.append(rep_a)
    s_alice = dict(zip(message_positions, alice_order))
    if rep_a.verdict == "abort":
        return finish(None, dealer_bits, extra)

    # Step 10: Bell readout by the last agent.
    totals: dict[int, PauliOp] = {}
    for pos in message_positions:
        outcome = register.measure_bell(s_alice[pos], s_travel[pos])
        totals[pos] = decode_bell_to_pauli(outcome)
    extra["totals"] = totals

    # Step 11: collaboration.
    transcript.append("collaboration_positions", positions=message_positions)
    collab: dict[int, list[PauliOp]] = {p: [] for p in message_positions}
    for k in range(m - 1):
        ops_log = {}
        for pos in message_positions:
            if k == 0 and attack is not None:
                op = attack.publish_final(pos)
            else:
                op = agent_ops[k].get(pos, PauliOp.I)
            collab[pos].append(op)
            ops_log[pos] = op.name
        transcript.append(
            "publish_ops", check="collaboration", party=f"agent{k}", ops=ops_log
        )
    recovered_ops = [
        recover_dealer_pauli(totals[pos], collab[pos]) for pos in message_positions
    ]
    recovered_bits = decode_message(recovered_ops)
    transcript.append("recovered", party="zach", bits=_bits_str(recovered_bits))
    extra["collab_ops"] = collab
    return finish(recovered_bits, dealer_bits, extra)


def run_trial(config: ScenarioConfig) -> RunReport:
    """Dispatch on the configured protocol mode."""
    if config.protocol == "original":
        return run_original(config)
    if config.protocol == "improved":
        return run_improved(config)
    raise ConfigError(f"unknown protocol {config.protocol!r}")
