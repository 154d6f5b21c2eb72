SPECIES_LABELS = "ABCDEFGHIJKLMNOPQRSTUVWXYZ"


def species_label(index: int) -> str:
    return SPECIES_LABELS[index]
