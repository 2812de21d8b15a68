BOV = "bov"
VLAD = "vlad"
FV_HARD = "fv_hard"
EMK = "emk"

ENCODERS = [
    BOV,
    VLAD,
    FV_HARD,
    EMK
]

# encoders whose columns are confined to one block
BLOCK_SPARSE_ENCODERS = [
    BOV,
    VLAD,
    FV_HARD
]
