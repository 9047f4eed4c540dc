colors = {
    'data': "#4363d8",
    'fit': "#e6194B",
    'theory': "#911eb4",
}
