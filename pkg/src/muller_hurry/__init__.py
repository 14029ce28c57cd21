"""Muller games: solving, score-bounded strategies and finite-duration refereeing."""

from .arena import Arena, AttractorResult, attractor, is_trap, subarena
from .conditions import MullerCondition, ZielonkaTree, build_zielonka_tree, condition, membership, restrict
from .engine import PlayRecord, Verdict, referee_play, verify_bound
from .finite_time import StoppingRule, build_product, finite_time_regions, mcnaughton_rule, solve_reachability, uniform_rule
from .gamefile import GameFile, parse_game, print_game
from .scoring import ScoreChain, accumulator, chain_init, chain_update, indicator, is_burden, low_score_word, max_score, score
from .strategies import attractor_strategy, naive_zielonka_strategy, score_bounding_strategy, sigma_star, tau_star, trace_change_points
from .zielonka import Decomposition, solve, winning_regions

__version__ = "0.1.0"
