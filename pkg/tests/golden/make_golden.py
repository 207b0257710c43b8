# Builds the golden table files from hand-transcribed reference cells.
# Run once from the repo root; the transcriptions below were copied cell by
# cell from the published tables, not from this package's builders.
import pathlib

HERE = pathlib.Path(__file__).parent

FANO_COLS = ["U_124", "U_235", "U_346", "U_457", "U_156", "U_267", "U_137"]
FANO_ROWS = [
    ("{%d},{1,2}" % d) for d in range(1, 8)
] + [
    ("{%d},{1,3}" % d) for d in range(1, 8)
] + [
    ("{%d},{2,3}" % d) for d in range(1, 8)
]
FANO_CELLS = [
    # T = {1,2}
    "* 123 134 145 * 126 *",
    "* * 234 245 125 * 123",
    "123 * * 345 135 236 *",
    "* 234 * * 145 246 134",
    "125 * 345 * * 256 135",
    "126 236 * 456 * * 136",
    "127 237 347 * 157 * *",
    # T = {1,3}
    "* 125 136 147 * 127 *",
    "* * 236 247 126 * 127",
    "134 * * 347 136 237 *",
    "* 245 * * 146 247 147",
    "145 * 356 * * 257 157",
    "146 256 * 467 * * 167",
    "147 257 367 * 167 * *",
    # T = {2,3}
    "* 135 146 157 * 167 *",
    "* * 246 257 256 * 237",
    "234 * * 357 356 367 *",
    "* 345 * * 456 467 347",
    "245 * 456 * * 567 357",
    "246 356 * 567 * * 367",
    "247 357 467 * 567 * *",
]

GDD_COLS = [
    "U_11,21", "U_11,22", "U_11,31", "U_11,32", "U_12,21", "U_12,22",
    "U_12,31", "U_12,32", "U_21,31", "U_21,32", "U_22,31", "U_22,32",
]
GDD_ROWS = ["(1,{1,2})", "(2,{1,2})", "(3,{1,2})", "(4,{1,2})"]
GDD_CELLS = [
    "* * * * * 221 * 212 * * * 122",
    "* 122 111 * * * * * * * 221 *",
    "* * * * 212 * 221 * 111 * * *",
    "111 * * 122 * * * * * 212 * *",
]

BIPLANE_COLS = ["U_1235", "U_2346", "U_3457", "U_1456", "U_2567", "U_1367", "U_1247"]
BIPLANE_ROWS = [
    "{%d},{%d,%d}" % (d, a, b)
    for (a, b) in [(1, 2), (1, 3), (1, 4), (2, 3), (2, 4), (3, 4)]
    for d in range(1, 8)
]
BIPLANE_CELLS = [
    # T = {1,2}
    "* 123,1 134,2 * 125,1 * *",
    "* * 234,1 124,1 * 123,1 *",
    "* * * 134,1 235,1 * 123,1",
    "124,1 * * * 245,2 134,2 *",
    "* 235,1 * * * 135,1 125,1",
    "126,1 * 346,1 * * * 126,2",
    "127,1 237,2 * 147,1 * * *",
    # T = {1,3}
    "* 124,1 135,1 * 126,2 * *",
    "* * 235,1 125,1 * 126,2 *",
    "* * * 135,1 236,1 * 134,2",
    "134,1 * * * 246,1 146,1 *",
    "* 245,1 * * * 156,1 145,1",
    "136,1 * 356,2 * * * 146,1",
    "137,1 247,1 * 157,2 * * *",
    # T = {1,4}
    "* 126,1 137,1 * 127,1 * *",
    "* * 237,1 126,1 * 127,1 *",
    "* * * 136,1 237,1 * 137,1",
    "145,1 * * * 247,1 147,1 *",
    "* 256,1 * * * 157,1 157,2",
    "156,1 * 367,1 * * * 167,1",
    "157,1 267,1 * 167,1 * * *",
    # T = {2,3}
    "* 134,1 145,1 * 156,1 * *",
    "* * 245,1 245,2 * 236,1 *",
    "* * * 345,1 356,2 * 234,1",
    "234,1 * * * 456,1 346,1 *",
    "* 345,1 * * * 356,2 245,2",
    "236,1 * 456,1 * * * 246,1",
    "237,1 347,1 * 457,1 * * *",
    # T = {2,4}
    "* 136,1 147,1 * 157,2 * *",
    "* * 247,1 246,1 * 237,2 *",
    "* * * 346,1 357,1 * 237,2",
    "245,1 * * * 457,1 347,1 *",
    "* 356,1 * * * 357,1 257,1",
    "256,1 * 467,1 * * * 267,1",
    "257,1 367,1 * 467,2 * * *",
    # T = {3,4}
    "* 146,1 157,1 * 167,1 * *",
    "* * 257,1 256,1 * 267,1 *",
    "* * * 356,1 367,1 * 347,1",
    "345,1 * * * 467,1 467,2 *",
    "* 456,1 * * * 567,1 457,1",
    "356,1 * 567,1 * * * 467,2",
    "357,1 467,1 * 567,1 * * *",
]


def write_table(path, corner, cols, row_labels, cell_rows):
    head = [corner] + cols
    body = [[lab] + row.split() for lab, row in zip(row_labels, cell_rows)]
    widths = [max(len(r[i]) for r in [head] + body) for i in range(len(head))]
    lines = [
        "  ".join(c.ljust(w) for c, w in zip(row, widths)).rstrip()
        for row in [head] + body
    ]
    (HERE / path).write_text("\n".join(lines) + "\n")


write_table("fano_user_delivery.txt", "D,T", FANO_COLS, FANO_ROWS, FANO_CELLS)
write_table("gdd_user_delivery.txt", "j,T", GDD_COLS, GDD_ROWS, GDD_CELLS)
write_table("biplane_user_delivery.txt", "D,T", BIPLANE_COLS, BIPLANE_ROWS, BIPLANE_CELLS)
print("wrote golden tables")
