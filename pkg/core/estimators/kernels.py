"""
重复实验内核：在同一个循环里按计数器生成权重并做DP，不物化权重场

第 r 次重复的权重场种子为 replicate_key(seed, r)，与
sample_field(dist, ..., field_seed(seed, r)) 逐位一致。rates[i, j] 是格点的
抽样速率（倾斜区内为 θ-λ），mask 标记倾斜区；sums 返回倾斜区权重和
（补偿求和），用于计算似然比。
"""
import numpy as np
from numba import njit

from core.distributions.rng import replicate_key, standard_variate


@njit(cache=True, nogil=True)
def passage_batch(kind, shape, seed, start, stop, a, b, rates, mask, values, sums):
    """G_{0,(a,b)}，逐行滚动，内存 O(b)"""
    row = np.empty(b + 1, dtype=np.float64)
    for r in range(start, stop):
        key = replicate_key(seed, r)
        total = 0.0
        carry = 0.0
        row[0] = 0.0
        for j in range(1, b + 1):
            w = standard_variate(kind, shape, key, 0, j) / rates[0, j]
            if mask[0, j]:
                y = w - carry
                s = total + y
                carry = (s - total) - y
                total = s
            row[j] = w + row[j - 1]
        for i in range(1, a + 1):
            w = standard_variate(kind, shape, key, i, 0) / rates[i, 0]
            if mask[i, 0]:
                y = w - carry
                s = total + y
                carry = (s - total) - y
                total = s
            row[0] = w + row[0]
            for j in range(1, b + 1):
                w = standard_variate(kind, shape, key, i, j) / rates[i, j]
                if mask[i, j]:
                    y = w - carry
                    s = total + y
                    carry = (s - total) - y
                    total = s
                left = row[j]
                down = row[j - 1]
                best = left if left >= down else down
                row[j] = w + best
        values[r - start] = row[b]
        sums[r - start] = total


@njit(cache=True, nogil=True)
def midpoint_batch(kind, shape, seed, start, stop, n, rates, mask, mids, disps, sums, ties):
    """G_{0,(n,n)} 的完整表加回溯：记录中点x坐标、最大位移与是否遇到并列"""
    table = np.empty((n + 1, n + 1), dtype=np.float64)
    for r in range(start, stop):
        key = replicate_key(seed, r)
        total = 0.0
        carry = 0.0
        table[0, 0] = 0.0
        for i in range(n + 1):
            for j in range(n + 1):
                if i == 0 and j == 0:
                    continue
                w = standard_variate(kind, shape, key, i, j) / rates[i, j]
                if mask[i, j]:
                    y = w - carry
                    s = total + y
                    carry = (s - total) - y
                    total = s
                if i == 0:
                    best = table[0, j - 1]
                elif j == 0:
                    best = table[i - 1, 0]
                else:
                    left = table[i - 1, j]
                    down = table[i, j - 1]
                    best = left if left >= down else down
                table[i, j] = w + best

        i = n
        j = n
        tie = False
        disp = 0
        mid = -1
        for level in range(2 * n, -1, -1):
            if level == n:
                mid = i
            gap = i - j if i >= j else j - i
            half = (gap + 1) // 2
            if half > disp:
                disp = half
            if level == 0:
                break
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
        mids[r - start] = mid
        disps[r - start] = disp
        sums[r - start] = total
        ties[r - start] = tie


@njit(cache=True, nogil=True)
def endpoint_batch(kind, shape, seed, start, stop, n, rates, mask, ends, values, sums):
    """点到线问题：三角形 {x+y ≤ n} 上逐行扫描，argmax 并列取较大的x"""
    row = np.empty(n + 1, dtype=np.float64)
    for r in range(start, stop):
        key = replicate_key(seed, r)
        total = 0.0
        carry = 0.0
        row[0] = 0.0
        for j in range(1, n + 1):
            w = standard_variate(kind, shape, key, 0, j) / rates[0, j]
            if mask[0, j]:
                y = w - carry
                s = total + y
                carry = (s - total) - y
                total = s
            row[j] = w + row[j - 1]
        best_value = row[n]
        best_x = 0
        for i in range(1, n + 1):
            w = standard_variate(kind, shape, key, i, 0) / rates[i, 0]
            if mask[i, 0]:
                y = w - carry
                s = total + y
                carry = (s - total) - y
                total = s
            row[0] = w + row[0]
            for j in range(1, n - i + 1):
                w = standard_variate(kind, shape, key, i, j) / rates[i, j]
                if mask[i, j]:
                    y = w - carry
                    s = total + y
                    carry = (s - total) - y
                    total = s
                left = row[j]
                down = row[j - 1]
                best = left if left >= down else down
                row[j] = w + best
            if row[n - i] >= best_value:
                best_value = row[n - i]
                best_x = i
        ends[r - start] = best_x
        values[r - start] = best_value
        sums[r - start] = total
