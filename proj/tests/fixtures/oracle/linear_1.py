n = int(input())
values = list(map(int, input().split()))
total = 0
for i in range(n):
    total += values[i]
print(total)
