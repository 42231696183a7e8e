def stones_left(row, k):
    left = 0
    for x in row:
        if x > k:
            left += 1
    return left


n = int(input())
row = list(map(int, input().split()))
for k in range(n):
    print(stones_left(row, k))
