"""
最后通过值的动态规划内核

G(source)=0，G(p) = ω(p) + max(G(p-e1), G(p-e2))，矩形外的前驱视为 -∞。
回溯时不保存父指针，而是由相邻的G值重新判断前驱；前驱值相等时取
x 坐标较大的一侧 (p-e2)，得到最右测地线。
"""
import numpy as np
from numba import njit


@njit(cache=True, nogil=True)
def passage_table(weights, sx, sy, tx, ty):
    a = tx - sx
    b = ty - sy
    table = np.empty((a + 1, b + 1), dtype=np.float64)
    table[0, 0] = 0.0
    for j in range(1, b + 1):
        table[0, j] = weights[sx, sy + j] + table[0, j - 1]
    for i in range(1, a + 1):
        table[i, 0] = weights[sx + i, sy] + table[i - 1, 0]
        for j in range(1, b + 1):
            left = table[i - 1, j]
            down = table[i, j - 1]
            best = left if left >= down else down
            table[i, j] = weights[sx + i, sy + j] + best
    return table


@njit(cache=True, nogil=True)
def passage_value(weights, sx, sy, tx, ty):
    """只求值的变体，内存为较短边长度"""
    a = tx - sx
    b = ty - sy
    if b <= a:
        row = np.empty(b + 1, dtype=np.float64)
        row[0] = 0.0
        for j in range(1, b + 1):
            row[j] = weights[sx, sy + j] + row[j - 1]
        for i in range(1, a + 1):
            row[0] = weights[sx + i, sy] + row[0]
            for j in range(1, b + 1):
                left = row[j]
                down = row[j - 1]
                best = left if left >= down else down
                row[j] = weights[sx + i, sy + j] + best
        return row[b]
    col = np.empty(a + 1, dtype=np.float64)
    col[0] = 0.0
    for i in range(1, a + 1):
        col[i] = weights[sx + i, sy] + col[i - 1]
    for j in range(1, b + 1):
        col[0] = weights[sx, sy + j] + col[0]
        for i in range(1, a + 1):
            left = col[i - 1]
            down = col[i]
            best = left if left >= down else down
            col[i] = weights[sx + i, sy + j] + best
    return col[a]


@njit(cache=True, nogil=True)
def trace_geodesic(table, sx, sy):
    """从终点回溯，返回 (路径坐标数组, 是否遇到并列)"""
    a = table.shape[0] - 1
    b = table.shape[1] - 1
    path = np.empty((a + b + 1, 2), dtype=np.int64)
    i = a
    j = b
    tie = False
    for idx in range(a + b, -1, -1):
        path[idx, 0] = sx + i
        path[idx, 1] = sy + j
        if i == 0:
            j -= 1
        elif j == 0:
            i -= 1
        else:
            left = table[i - 1, j]
            down = table[i, j - 1]
            if down > left:
                j -= 1
            elif left > down:
                i -= 1
            else:
                tie = True
                j -= 1
    return path, tie


@njit(cache=True, nogil=True)
def line_sweep(weights, n):
    """一次扫描三角形 {x+y ≤ n}，返回直线 x+y=n 上各点的G值(按x索引)"""
    row = np.empty(n + 1, dtype=np.float64)
    line = np.empty(n + 1, dtype=np.float64)
    row[0] = 0.0
    for j in range(1, n + 1):
        row[j] = weights[0, j] + row[j - 1]
    line[0] = row[n]
    for i in range(1, n + 1):
        row[0] = weights[i, 0] + row[0]
        for j in range(1, n - i + 1):
            left = row[j]
            down = row[j - 1]
            best = left if left >= down else down
            row[j] = weights[i, j] + best
        line[i] = row[n - i]
    return line


@njit(cache=True, nogil=True)
def line_argmax(line):
    """直线上的最大值位置，并列时取较大的x"""
    best = 0
    for i in range(1, line.shape[0]):
        if line[i] >= line[best]:
            best = i
    return best
