from .predicate import candidate_predicate, PredicateResult
from .enumerate import GenerationTask, enumerate_candidates, GenerationBudgetExceeded

__all__ = [
    "candidate_predicate", "PredicateResult",
    "GenerationTask", "enumerate_candidates", "GenerationBudgetExceeded",
]
