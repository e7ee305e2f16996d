# Copyright (c) 2025, Picurit and contributors
# For license information, please see license.txt

import argparse
import hashlib
import json
import logging
import random
import re
import sys
from concurrent.futures import ThreadPoolExecutor
from pathlib import Path
from typing import Any, Sequence

from legendrian_skein.config import get_settings
from legendrian_skein.exceptions import (
	LegendrianSkeinError, ValidationError, DataError, DivisibilityError, PatternMismatch,
)
from legendrian_skein.front.front import (
	LoadedFront, OrientedFront, apply_move, classical_invariants, load_front, maslov, word_area,
)
from legendrian_skein.polyring.polyring import render
from legendrian_skein.rulings.rulings import ruling_count_report, ruling_polynomial
from legendrian_skein.skein.skein import check_bound, check_mainT, homfly_H, homfly_P, specialize_hat
from legendrian_skein.symfun.symfun import parse_partition, render_partition, turaev_inner
from legendrian_skein.utils import dump_json, get_logger, log_error, render_table, resolve_path

logger = get_logger(__name__)

EXIT_OK = 0
EXIT_INVALID = 2
EXIT_PRECONDITION = 3
EXIT_CHECK_FAILED = 4
EXIT_INTERNAL = 5

# Growth cap for random insertions during corpus move checks
MOVE_GROWTH = 6

_POTENTIAL = re.compile(r"^c(\d+)=(-?\d+)$")


class CheckFailed(Exception):
	"""A command ran to completion but one of its checks did not hold."""

	def __init__(self, results: dict[str, Any]):
		super().__init__("check failed")
		self.results = results


def _digest(data: bytes) -> str:
	return hashlib.sha256(data).hexdigest()


def read_front(path: Path) -> LoadedFront:
	"""
	Load a front file.

	Raises:
		ValidationError: If the file cannot be read or does not parse
	"""
	try:
		text = path.read_text(encoding="utf-8")
	except OSError as e:
		raise ValidationError(f"Cannot read {path}: {e.strerror}")
	return load_front(text)


def parse_potentials(items: Sequence[str] | None) -> dict[int, int]:
	"""Turn c<k>=<int> flags into base values keyed by component index."""
	out = {}
	for item in items or ():
		match = _POTENTIAL.match(item.strip())
		if not match or int(match.group(1)) < 1:
			raise ValidationError(f"Potential must look like c<k>=<int>, got {item!r}")
		out[int(match.group(1)) - 1] = int(match.group(2))
	return out


# Result builders

def invariants_result(front: OrientedFront) -> dict[str, Any]:
	invariants = classical_invariants(front)
	return {
		"word": str(front.word),
		"strands": front.base_strands,
		"writhe": invariants.writhe,
		"tb": invariants.tb,
		"r": invariants.rotation,
		"cusps": {
			"left": invariants.left_cusps,
			"right": invariants.right_cusps,
			"up": invariants.up_cusps,
			"down": invariants.down_cusps,
		},
		"components": [
			{"index": c.index + 1, "r": c.rotation, "up": c.up_cusps, "down": c.down_cusps}
			for c in invariants.components
		],
		"area": word_area(front),
	}


def rulings_result(loaded: LoadedFront, p: int, overrides: dict[int, int]) -> dict[str, Any]:
	front = loaded.front
	base = {**loaded.maslov_base, **overrides}
	potential = maslov(front, base) if base else None
	return {
		"p": p,
		"polynomial": render(ruling_polynomial(front, p, potential)),
		"histogram": [list(pair) for pair in ruling_count_report(front, p, potential)],
	}


def homfly_result(front: OrientedFront) -> dict[str, Any]:
	h_element = homfly_H(front)
	p_element = homfly_P(front, h_element)
	invariants = classical_invariants(front)
	return {
		"H": h_element.to_json(),
		"P": p_element.to_json(),
		"P_hat": render(specialize_hat(p_element)),
		"tb": invariants.tb,
		"r": invariants.rotation,
		"checks": {
			"mainT": check_mainT(front, p_element).to_json(),
			"bound": check_bound(front, p_element).to_json(),
		},
	}


# Corpus

def random_move(front: OrientedFront, rng: random.Random, max_letters: int) -> OrientedFront:
	"""One Legendrian or planar move at a random place; the front itself when it does not apply."""
	n = len(front.letters)
	position = rng.randrange(max(n, 1))
	move = rng.choice(("cyclic_rotate", "far_commute", "braid", "lr1", "lr2", "lr1+", "lr2+"))
	try:
		if move == "lr1+":
			if n + 3 > max_letters:
				return front
			strand = rng.randint(1, max(front.word.strands(position), 1))
			return apply_move(front, "lr1", position, rng.choice(("upper", "lower")), strand)
		if move == "lr2+":
			if n + 2 > max_letters:
				return front
			return apply_move(front, "lr2", position, rng.choice(("above", "below")))
		return apply_move(front, move, position)
	except PatternMismatch:
		return front


def _check_moves(front: OrientedFront, name: str, moves: int, seed: int) -> list[str]:
	rng = random.Random(f"{seed}:{name}")
	invariants = classical_invariants(front)
	expected = (invariants.tb, invariants.rotation, ruling_polynomial(front, 2), homfly_P(front))
	current = front
	for step in range(moves):
		current = random_move(current, rng, len(front.letters) + MOVE_GROWTH)
		moved = classical_invariants(current)
		observed = (moved.tb, moved.rotation, ruling_polynomial(current, 2), homfly_P(current))
		if observed != expected:
			return [f"moves: invariants changed after step {step + 1} at {current.word}"]
	return []


def _check_expected(result: dict[str, Any], path: Path) -> list[str]:
	try:
		expectations = json.loads(path.read_text(encoding="utf-8"))
	except (OSError, json.JSONDecodeError) as e:
		raise ValidationError(f"Cannot read expectations {path.name}: {str(e)}")
	if not isinstance(expectations, dict):
		raise ValidationError(f"{path.name} must map JSONPath expressions to values")
	mismatches = []
	for query, value in sorted(expectations.items()):
		actual = resolve_path(result, query)
		if actual != value:
			mismatches.append(f"{query}: expected {value!r}, got {actual!r}")
	return mismatches


def check_diagram(path: Path, moves: int = 0, seed: int = 0) -> dict[str, Any]:
	"""
	Run the identity checks on one corpus file.

	Args:
		path: The .front file; a sibling .expected file is checked when present
		moves: Random moves to apply while checking invariance
		seed: Seed mixed with the file name for the move sequence

	Returns:
		dict: Per-diagram result with an "ok" flag and the failed checks
	"""
	result: dict[str, Any] = {"name": path.name}
	try:
		front = read_front(path).front
		result.update(homfly_result(front))
		result["invariants"] = invariants_result(front)
		checks = result["checks"]
		ruled = checks["mainT"]["lhs"] != "0"
		sharp = checks["bound"]["tb_plus_absr"] == checks["bound"]["neg_adeg"]
		checks["sharp_when_ruled"] = sharp or not ruled

		failures = [name for name in ("mainT", "bound", "sharp_when_ruled") if not _passed(checks[name])]
		expected = path.with_suffix(".expected")
		if expected.exists():
			failures.extend(_check_expected(result, expected))
		if moves:
			failures.extend(_check_moves(front, path.name, moves, seed))
	except LegendrianSkeinError as e:
		logger.warning("%s: %s", path.name, e)
		failures = [f"error: {str(e)}"]
	result["failures"] = failures
	result["ok"] = not failures
	return result


def _passed(check: Any) -> bool:
	if isinstance(check, bool):
		return check
	return check.get("equal", check.get("holds", False))


def corpus_files(directory: Path) -> list[Path]:
	if not directory.is_dir():
		raise ValidationError(f"Corpus directory {directory} does not exist")
	return sorted(directory.glob("*.front"), key=lambda p: p.name)


# Commands

def cmd_invariants(args: argparse.Namespace) -> dict[str, Any]:
	loaded = read_front(Path(args.file))
	result = invariants_result(loaded.front)
	result["maslov_moduli"] = list(maslov(loaded.front, loaded.maslov_base).moduli)
	return result


def cmd_rulings(args: argparse.Namespace) -> dict[str, Any]:
	loaded = read_front(Path(args.file))
	return rulings_result(loaded, args.p, parse_potentials(args.potential))


def cmd_homfly(args: argparse.Namespace) -> dict[str, Any]:
	return homfly_result(read_front(Path(args.file)).front)


def cmd_inner(args: argparse.Namespace) -> dict[str, Any]:
	lam = parse_partition(args.lam)
	mu = parse_partition(args.mu)
	return {
		"lambda": render_partition(lam),
		"mu": render_partition(mu),
		"value": render(turaev_inner(lam, mu)),
	}


def cmd_check(args: argparse.Namespace) -> dict[str, Any]:
	front = read_front(Path(args.file)).front
	both = not (args.mainT or args.bound)
	p_element = homfly_P(front)
	results: dict[str, Any] = {}
	if args.mainT or both:
		results["mainT"] = check_mainT(front, p_element).to_json()
	if args.bound or both:
		results["bound"] = check_bound(front, p_element).to_json()
	if not all(_passed(check) for check in results.values()):
		raise CheckFailed(results)
	return results


def cmd_corpus(args: argparse.Namespace) -> dict[str, Any]:
	files = corpus_files(Path(args.directory) if args.directory else get_settings().default_corpus_dir)
	jobs = max(1, args.jobs)
	with ThreadPoolExecutor(max_workers=jobs) as pool:
		outcomes = list(pool.map(lambda path: check_diagram(path, args.moves, args.seed), files))
	failed = [outcome["name"] for outcome in outcomes if not outcome["ok"]]
	results = {
		"diagrams": len(outcomes),
		"failures": len(failed),
		"failed": failed,
		"moves": args.moves,
		"seed": args.seed,
		"diagram_results": outcomes,
	}
	if failed:
		raise CheckFailed(results)
	return results


COMMANDS = {
	"invariants": cmd_invariants,
	"rulings": cmd_rulings,
	"homfly": cmd_homfly,
	"inner": cmd_inner,
	"check": cmd_check,
	"corpus": cmd_corpus,
}


def input_digest(args: argparse.Namespace) -> str:
	"""Hash of what the command reads: file bytes, partition text or the corpus .front and .expected files."""
	if args.command == "inner":
		return _digest(f"{args.lam}|{args.mu}".encode("utf-8"))
	if args.command == "corpus":
		directory = Path(args.directory) if args.directory else get_settings().default_corpus_dir
		hasher = hashlib.sha256()
		files = [*directory.glob("*.front"), *directory.glob("*.expected")] if directory.is_dir() else []
		for path in sorted(files, key=lambda p: p.name):
			hasher.update(path.name.encode("utf-8"))
			hasher.update(path.read_bytes())
		return hasher.hexdigest()
	try:
		return _digest(Path(args.file).read_bytes())
	except OSError:
		return _digest(args.file.encode("utf-8"))


def build_parser() -> argparse.ArgumentParser:
	settings = get_settings()
	parser = argparse.ArgumentParser(
		prog="legendrian-skein",
		description="Invariants of Legendrian links in the solid torus from annular fronts.",
	)
	parser.add_argument("--pretty", action="store_true", help="Print the report as a table of paths and values instead of JSON")
	parser.add_argument("--seed", type=int, default=0, help="Seed for randomized move checks")
	parser.add_argument("--verbose", action="store_true", help="Log at DEBUG level to stderr")
	sub = parser.add_subparsers(dest="command", required=True)

	p_inv = sub.add_parser("invariants", help="Writhe, tb, rotation and cusp counts")
	p_inv.add_argument("file")

	p_rul = sub.add_parser("rulings", help="p-graded ruling polynomial")
	p_rul.add_argument("file")
	p_rul.add_argument("-p", type=int, default=settings.default_ruling_grading)
	p_rul.add_argument("--potential", action="append", metavar="c<k>=<int>",
		help="Base potential of component k; repeatable")

	p_hom = sub.add_parser("homfly", help="HOMFLY-PT class in the Turaev basis")
	p_hom.add_argument("file")

	p_inn = sub.add_parser("inner", help="Pairing of two Turaev basis elements")
	p_inn.add_argument("lam", metavar="lambda")
	p_inn.add_argument("mu")

	p_chk = sub.add_parser("check", help="Main identity and Bennequin-type bound")
	p_chk.add_argument("file")
	p_chk.add_argument("--mainT", action="store_true")
	p_chk.add_argument("--bound", action="store_true")

	p_cor = sub.add_parser("corpus", help="Run every check over a directory of fronts")
	p_cor.add_argument("directory", nargs="?")
	p_cor.add_argument("--jobs", type=int, default=1)
	p_cor.add_argument("--moves", type=int, default=0, help="Random moves per diagram for invariance checks")
	return parser


def configure_logging(verbose: bool) -> None:
	logging.basicConfig(
		stream=sys.stderr,
		level=logging.DEBUG if verbose else logging.WARNING,
		format="%(levelname)s %(name)s: %(message)s",
	)


def main(argv: Sequence[str] | None = None) -> int:
	args = build_parser().parse_args(argv)
	configure_logging(args.verbose)

	report: dict[str, Any] = {
		"version": get_settings().report_version,
		"command": args.command,
		"input_digest": input_digest(args),
	}
	code = EXIT_OK
	try:
		report["results"] = COMMANDS[args.command](args)
		report["status"] = "ok"
	except CheckFailed as e:
		report["results"] = e.results
		report["status"] = "check_failed"
		code = EXIT_CHECK_FAILED
	except DivisibilityError as e:
		report["status"] = "precondition"
		report["error"] = str(e)
		code = EXIT_PRECONDITION
	except ValidationError as e:
		report["status"] = "invalid"
		report["error"] = str(e)
		code = EXIT_INVALID
	except DataError as e:
		report["status"] = "internal"
		report["error"] = str(e)
		code = EXIT_INTERNAL
	except Exception as e:
		log_error(
			message=f"Command {args.command} failed unexpectedly: {str(e)}",
			title="CLI Error"
		)
		report["status"] = "internal"
		report["error"] = f"Failed to run {args.command}: {str(e)}"
		code = EXIT_INTERNAL

	if "error" in report:
		logger.warning("%s: %s", args.command, report["error"])
	sys.stdout.write((render_table(report) if args.pretty else dump_json(report)) + "\n")
	return code


if __name__ == "__main__":
	sys.exit(main())
