def row_sum(grid, n, r):
    s = 0
    for c in range(n):
        s += grid[r][c]
    return s


n = int(input())
grid = [list(map(int, input().split())) for _ in range(n)]
best = 0
for i in range(n):
    for j in range(n):
        best = max(best, row_sum(grid, n, i) + row_sum(grid, n, j))
print(best)
