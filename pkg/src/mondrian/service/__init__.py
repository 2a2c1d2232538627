from .workspace import Workspace, FileState, RegionState
from .split import SplitFile, split_grid, write_split

__all__ = [
    "Workspace",
    "FileState",
    "RegionState",
    "SplitFile",
    "split_grid",
    "write_split",
]
