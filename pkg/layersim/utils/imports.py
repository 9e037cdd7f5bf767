from lightning_utilities.core.imports import RequirementCache

_IS_TORCH_GREATER_EQUAL_2_0 = RequirementCache("torch>=2.0")
